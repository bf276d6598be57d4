#include <cli.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kData = BIGBRACKET_DATA_DIR;
const std::string kGolden = BIGBRACKET_GOLDEN_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bigbracket");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = bigbracket::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("bigbracket_test_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

struct Case {
  std::string name;
  std::vector<std::string> args;
  int code;
};

std::vector<Case> cases() {
  const auto d = [](const std::string& f) { return kData + "/" + f; };
  return {
      {"verify_poisson_d1", {"verify-poisson", "--dim", "1"}, 0},
      {"verify_poisson_d2", {"verify-poisson", "--dim", "2"}, 0},
      {"mc_check_lie_bialgebra", {"mc-check", "--input", d("lie_bialgebra_nonabelian2.json")}, 0},
      {"mc_check_not_mc", {"mc-check", "--input", d("not_mc.json")}, 1},
      {"classify_quasi", {"classify", "--input", d("quasi_bialgebra.json")}, 0},
      {"classify_zero", {"classify", "--input", d("zero.json"), "--dim", "2"}, 0},
      {"def_cohomology_nonabelian2", {"def-cohomology", "--input", d("lie_bialgebra_nonabelian2.json")}, 0},
      {"gs_cohomology_group_z2", {"gs-cohomology", "--bialgebra", "group_z2", "--max-total", "3"}, 0},
      {"gs_cohomology_sweedler4", {"gs-cohomology", "--bialgebra", "sweedler4", "--max-total", "3"}, 0},
      {"gs_cohomology_file", {"gs-cohomology", "--bialgebra", d("group_z2.json"), "--max-total", "3"}, 0},
      {"hgs_nonabelian2", {"hgs", "--builtin", "nonabelian2"}, 0},
      {"hgs_heisenberg3", {"hgs", "--lie-algebra", d("heisenberg3.json")}, 0},
      {"yoneda_d2", {"yoneda", "--dim", "2"}, 0},
      {"transport_check_d2", {"transport-check", "--dim", "2"}, 0},
      {"transport_check_mutated", {"transport-check", "--dim", "2", "--mutate"}, 1},
      {"formality_check_d2", {"formality-check", "--dim", "2"}, 0},
      {"boundary_pairing_d2", {"boundary", "--dim", "2", "--form", d("pairing_form_d2.json")}, 0},
      {"boundary_degenerate", {"boundary", "--dim", "2", "--form", d("form_d2.json"), "--degenerate-pairing", "1"}, 1},
      {"invariants_d2", {"invariants", "--dim", "2"}, 0},
  };
}

class CliGolden : public ::testing::TestWithParam<Case> {};

}  // namespace

// Set BIGBRACKET_UPDATE_GOLDEN=1 to rewrite tests/golden from the current build.
TEST_P(CliGolden, MatchesGoldenAndIsDeterministic) {
  const Case& c = GetParam();
  const auto first = scratch(c.name + ".1.json"), second = scratch(c.name + ".2.json");
  auto args = c.args;
  args.insert(args.begin(), {"--json", first.string()});
  const auto r1 = run_cli(args);
  EXPECT_EQ(r1.code, c.code) << r1.err;
  args[1] = second.string();
  const auto r2 = run_cli(args);
  EXPECT_EQ(r2.code, c.code);
  const auto a = slurp(first), b = slurp(second);
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a, b) << "report differs between runs";

  const auto report = bigbracket::json_io::parse_text(a, c.name);
  for (const char* key : {"command", "inputs", "status", "violations", "payload"}) EXPECT_TRUE(report.contains(key));
  EXPECT_EQ(report["status"], c.code == 0 ? "pass" : "fail");
  EXPECT_EQ(report["violations"].empty(), c.code == 0);

  const fs::path golden = fs::path(kGolden) / (c.name + ".json");
  if (std::getenv("BIGBRACKET_UPDATE_GOLDEN")) {
    std::ofstream(golden, std::ios::binary) << a;
  } else {
    ASSERT_TRUE(fs::exists(golden)) << golden;
    EXPECT_EQ(a, slurp(golden)) << "golden mismatch for " << c.name;
  }
}

INSTANTIATE_TEST_SUITE_P(Subcommands, CliGolden, ::testing::ValuesIn(cases()),
                         [](const auto& info) { return info.param.name; });

TEST(Cli, TextOutputGoesToStdout) {
  const auto r = run_cli({"yoneda", "--dim", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("command: yoneda"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("status: pass"), std::string::npos);
  EXPECT_EQ(r.out.find("timing_ms"), std::string::npos);
}

TEST(Cli, TimingIsOptIn) {
  const auto path = scratch("timing.json");
  EXPECT_EQ(run_cli({"--json", path.string(), "--timing", "invariants", "--dim", "1"}).code, 0);
  EXPECT_TRUE(bigbracket::json_io::read_file(path.string()).contains("timing_ms"));
}

TEST(Cli, GlobalOptionsAfterSubcommand) {
  const auto path = scratch("late.json");
  EXPECT_EQ(run_cli({"gs-cohomology", "--bialgebra", "trivial", "--max-degree", "2", "--json", path.string()}).code, 0);
  EXPECT_EQ(bigbracket::json_io::read_file(path.string())["inputs"]["max_total"], 2);
}

TEST(Cli, SeedChangesSampledTriplesOnly) {
  const auto a = scratch("seed1.json"), b = scratch("seed2.json");
  EXPECT_EQ(run_cli({"--json", a.string(), "--seed", "7", "verify-poisson", "--dim", "2"}).code, 0);
  EXPECT_EQ(run_cli({"--json", b.string(), "--seed", "7", "verify-poisson", "--dim", "2"}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, InputErrorsExitTwo) {
  const auto d = [](const std::string& f) { return kData + "/" + f; };
  struct Bad {
    std::vector<std::string> args;
    std::string message;
  };
  const std::vector<Bad> bad{
      {{"mc-check", "--input", d("malformed.json")}, "malformed.json:3:38: malformed JSON"},
      {{"hgs", "--lie-algebra", d("jacobi_violation.json")}, "Jacobi identity fails on (x1, x2, x3)"},
      {{"gs-cohomology", "--bialgebra", d("bad_bialgebra.json")}, "counit multiplicativity"},
      {{"gs-cohomology", "--bialgebra", "no_such_algebra"}, "unknown bialgebra"},
      {{"boundary", "--dim", "2", "--form", d("asymmetric_form_d2.json")}, "symmetric"},
      {{"hgs", "--builtin", "nope"}, "unknown builtin"},
      {{"verify-poisson", "--dim", "9"}, "dimension"},
      {{"yoneda", "--dim", "4"}, ""},
      {{"verify-poisson"}, ""},
      {{"no-such-command"}, ""},
      {{}, ""},
  };
  for (const auto& b : bad) {
    const auto r = run_cli(b.args);
    EXPECT_EQ(r.code, 2) << (b.args.empty() ? "(no args)" : b.args.front()) << " " << r.out << r.err;
    EXPECT_NE(r.err.find(b.message), std::string::npos) << r.err;
  }
}

TEST(Cli, InputErrorWritesErrorReport) {
  const auto path = scratch("error.json");
  EXPECT_EQ(run_cli({"--json", path.string(), "mc-check", "--input", kData + "/malformed.json"}).code, 2);
  const auto report = bigbracket::json_io::read_file(path.string());
  EXPECT_EQ(report["status"], "error");
  EXPECT_EQ(report["command"], "mc-check");
  EXPECT_FALSE(report["violations"].empty());
}

TEST(Cli, BinaryExitCodes) {
  const std::string exe = BIGBRACKET_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("invariants --dim 1"), 0);
  EXPECT_EQ(status("mc-check --input " + kData + "/not_mc.json"), 1);
  EXPECT_EQ(status("mc-check --input " + kData + "/malformed.json"), 2);
  EXPECT_EQ(status("--help"), 0);
}
