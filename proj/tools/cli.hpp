#pragma once

// Command-line front end. Every subcommand produces a report
//   {"command", "inputs", "status", "violations", "payload"}
// written as JSON to --json PATH, or as indented text to stdout.
// Exit codes: 0 pass, 1 mathematical failure, 2 usage or input error.

#include <bigbracket/bigbracket.hpp>
#include <bigbracket/json_io.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace bigbracket::cli {

using json_io::json;

struct Report {
  std::string command;
  json inputs = json::object();
  json violations = json::array();
  json payload = json::object();
  std::string status = "pass";

  void violation(const std::string& kind, const std::string& detail, json witness = nullptr) {
    json v{{"kind", kind}, {"detail", detail}};
    if (!witness.is_null()) v["witness"] = std::move(witness);
    violations.push_back(std::move(v));
    status = "fail";
  }

  json to_json() const {
    return {{"command", command}, {"inputs", inputs}, {"status", status}, {"violations", violations},
            {"payload", payload}};
  }
};

struct GlobalOptions {
  std::string json_path;
  std::uint64_t seed = 1;
  std::optional<int> max_degree;
  std::optional<int> cap;
  bool timing = false;
};

namespace detail {

inline void render_text(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto is_flat = [](const json& v) {
    for (const auto& x : v)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !(v.is_array() && is_flat(v) && v.size() <= 16)) {
        out << pad << k << ":";
        if (v.empty()) {
          out << (v.is_array() ? " []" : " {}") << "\n";
          continue;
        }
        out << "\n";
        render_text(v, out, indent + 2);
      } else if (v.is_array()) {
        out << pad << k << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
        out << "]\n";
      } else {
        out << pad << k << ": " << scalar(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_array() && is_flat(v)) {
        out << pad << "- [";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
        out << "]\n";
      } else if (v.is_structured()) {
        out << pad << "-\n";
        render_text(v, out, indent + 2);
      } else {
        out << pad << "- " << scalar(v) << "\n";
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

inline json dims_to_json(const std::map<int, std::size_t>& dims) {
  json out = json::object();
  for (const auto& [n, v] : dims) out[std::to_string(n)] = v;
  return out;
}

inline json monomials_to_json(const std::vector<Monomial>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(m.name());
  return out;
}

inline Element read_element(const std::string& path) { return json_io::element_from_json(json_io::read_file(path)); }

inline Dimension dimension_for(const Element& h, std::optional<int> dim) {
  int m = 1;
  for (const auto& [mono, c] : h.terms()) m = std::max(m, mono.max_index());
  if (dim) {
    if (*dim < m) throw InputError("--dim " + std::to_string(*dim) + " is smaller than the largest index " +
                                   std::to_string(m));
    return Dimension(*dim);
  }
  return Dimension(m);
}

inline ProtoStructure proto_from(const Element& h) {
  if (!h.is_homogeneous_of_degree(3)) throw InputError("input element must be of pure degree 3");
  return ProtoStructure(h);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands

inline Report run_verify_poisson(int dim, std::size_t random_triples, std::uint64_t seed) {
  Report r{"verify-poisson"};
  r.inputs = {{"dim", dim}, {"random_triples", random_triples}, {"seed", seed}};
  PoissonOptions opt;
  opt.random_triples = random_triples;
  opt.seed = seed;
  const auto rep = verify_poisson(Dimension(dim), opt);
  r.payload = {{"dimension", rep.dimension},
               {"pairs_checked", rep.pairs_checked},
               {"triples_checked", rep.triples_checked},
               {"exhaustive_triples", rep.exhaustive_triples}};
  for (const auto& v : rep.violations)
    r.violation(v.identity, v.defect.to_string(), detail::monomials_to_json(v.witness));
  return r;
}

inline Report run_mc_check(const Element& h, std::optional<int> dim) {
  Report r{"mc-check"};
  const Dimension d = detail::dimension_for(h, dim);
  r.inputs = {{"dim", d.value()}, {"h", json_io::element_to_json(h)}};
  const auto mc = mc_check(detail::proto_from(h));
  r.payload = {{"square", json_io::element_to_json(mc.square)}, {"is_mc", mc.is_mc}};
  if (!mc.is_mc) r.violation("maurer-cartan", "[h,h] = " + mc.square.to_string());
  return r;
}

inline Report run_classify(const Element& h, std::optional<int> dim) {
  Report r{"classify"};
  const Dimension d = detail::dimension_for(h, dim);
  r.inputs = {{"dim", d.value()}, {"h", json_io::element_to_json(h)}};
  const auto proto = detail::proto_from(h);
  const auto cls = classify_proto(proto);
  r.payload = {{"classification", to_string(cls)},
               {"components",
                {{"lambda", !proto.lambda().is_zero()},
                 {"delta", !proto.delta().is_zero()},
                 {"alpha", !proto.alpha().is_zero()},
                 {"beta", !proto.beta().is_zero()}}}};
  if (cls == Classification::NotMC) r.violation("maurer-cartan", "[h,h] = " + mc_check(proto).square.to_string());
  return r;
}

inline Report run_def_cohomology(const Element& h, std::optional<int> dim, std::optional<int> max_degree) {
  Report r{"def-cohomology"};
  const Dimension d = detail::dimension_for(h, dim);
  r.inputs = {{"dim", d.value()}, {"h", json_io::element_to_json(h)}};
  const auto proto = detail::proto_from(h);
  const auto mc = mc_check(proto);
  if (!mc.is_mc) {
    r.violation("maurer-cartan", "[h,h] = " + mc.square.to_string() + "; ad_h does not square to zero");
    return r;
  }
  auto dims = deformation_cohomology(proto, d);
  if (max_degree) {
    r.inputs["max_degree"] = *max_degree;
    for (auto it = dims.begin(); it != dims.end();) it = it->first > *max_degree ? dims.erase(it) : std::next(it);
  }
  r.payload = {{"cohomology_dims", detail::dims_to_json(dims)}};
  return r;
}

inline Report run_gs_cohomology(const FiniteBialgebra& A, int max_total) {
  Report r{"gs-cohomology"};
  r.inputs = {{"bialgebra", json_io::bialgebra_to_json(A)}, {"max_total", max_total}};
  if (max_total < 2) throw InputError("--max-total must be at least 2");
  json checks = json::array();
  for (const auto& c : gs_square_checks(A, max_total)) {
    checks.push_back({{"p", c.p}, {"q", c.q}, {"d1d1", c.d1d1_zero}, {"d2d2", c.d2d2_zero},
                      {"d1d2+d2d1", c.anticommute}});
    if (!c.ok())
      r.violation("square-zero", "d^2 != 0 on block (p,q) = (" + std::to_string(c.p) + "," + std::to_string(c.q) + ")");
  }
  r.payload["sign_convention"] = kGSConvention.describe();
  r.payload["square_checks"] = checks;
  if (r.status == "pass") r.payload["cohomology_dims"] = detail::dims_to_json(gs_cohomology(A, max_total));
  return r;
}

inline Report run_hgs(const LieAlgebraData& g, int cap) {
  Report r{"hgs"};
  r.inputs = {{"lie_algebra", json_io::lie_to_json(g)}, {"cap", cap}};
  const int d = g.dim();
  json checks = json::array();
  for (int n = 2; n <= std::min(d, cap); ++n) {
    const bool ok = (induced_differential(g, n - 1, cap) * induced_differential(g, n, cap)).is_zero();
    checks.push_back({{"resolution", "induced"}, {"n", n}, {"square_zero", ok}});
    if (!ok) r.violation("square-zero", "induced d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0");
  }
  for (int n = 0; n + 1 <= std::min(d, cap); ++n) {
    const bool ok = (coinduced_differential(g, n + 1, cap) * coinduced_differential(g, n, cap)).is_zero();
    checks.push_back({{"resolution", "coinduced"}, {"n", n}, {"square_zero", ok}});
    if (!ok)
      r.violation("square-zero", "coinduced d_" + std::to_string(n + 1) + " d_" + std::to_string(n) + " != 0");
  }
  const auto complex = hom_complex(g);
  bool zero_differential = true;
  for (int n = complex.lo(); n < complex.hi(); ++n)
    if (!complex.differential(n)->is_zero()) zero_differential = false;
  const auto dims = cohomology_dims(complex);
  r.payload = {{"resolution_checks", checks},
               {"zero_differential", zero_differential},
               {"cohomology_dims", detail::dims_to_json(dims)}};
  if (g.is_abelian()) {
    std::map<int, std::size_t> expected;
    for (int n = 0; n <= 2 * d; ++n) expected[n] = dim_by_degree(d, n);
    r.payload["expected_dims"] = detail::dims_to_json(expected);
    if (!zero_differential) r.violation("abelian", "differential is nonzero for abelian g");
    if (dims != expected) r.violation("abelian", "cohomology differs from /\\V (x) /\\V*");
  }
  return r;
}

inline Report run_yoneda(int d) {
  Report r{"yoneda"};
  r.inputs = {{"dim", d}};
  const Dimension dim(d, 3);
  std::vector<Monomial> basis;
  for (int n = 0; n <= 2 * d; ++n)
    for (const auto& m : enumerate_basis(dim, n)) basis.push_back(m);
  std::size_t checked = 0;
  for (const auto& x : basis)
    for (const auto& y : basis) {
      ++checked;
      const Element X(x), Y(y);
      if (!(yoneda_product(to_hom(X, d), to_hom(Y, d)) == to_hom(X * Y, d)))
        r.violation("yoneda", "u.v differs from the product", json::array({x.name(), y.name()}));
    }
  r.payload = {{"pairs_checked", checked}, {"identification", "e_I f_J -> (-1)^{|J|(|J|-1)/2} (x_J -> x_I)"}};
  return r;
}

inline Report run_transport_check(int d, int cap, bool mutate) {
  Report r{"transport-check"};
  r.inputs = {{"dim", d}, {"cap", cap}, {"mutate", mutate}};
  (void)Dimension(d, 3);
  InducedOptions opt;
  opt.drop_alternating_sign = mutate;
  const auto rep = abelian_transport_check(d, cap, opt);
  r.payload = {{"maps_checked", rep.maps_checked},
               {"induced_square_zero", rep.boundary_square_zero},
               {"coinduced_square_zero", rep.coboundary_square_zero},
               {"transported_zero", rep.transported_zero}};
  for (const auto& f : rep.failures) r.violation("transport", f);
  return r;
}

inline json census_to_json(const std::vector<DegreeCensus>& census) {
  json out = json::array();
  for (const auto& c : census) out.push_back({{"p", c.p}, {"target_power", c.target_power}, {"vanishes", c.vanishes}});
  return out;
}

inline Report run_formality_check(int d) {
  Report r{"formality-check"};
  r.inputs = {{"dim", d}};
  const Dimension dim(d, 4);
  const auto h1 = h1_vanishing_check(dim);
  const auto inv = invariant_form_space(dim);
  json basis = json::array();
  for (const auto& F : inv.basis) basis.push_back(json_io::dense_to_json(F));
  r.payload = {{"census", census_to_json(h1.census)},
               {"forms_checked", h1.forms_checked},
               {"h1_vanishing", h1.passed()},
               {"invariant_forms", {{"dimension", inv.basis.size()},
                                    {"proportional_to_pairing", inv.proportional_to_pairing},
                                    {"basis", basis}}}};
  for (const auto& f : h1.failures) r.violation("h1", f);
  if (inv.basis.size() != 1 || !inv.proportional_to_pairing)
    r.violation("invariance", "invariant symmetric forms are not the multiples of the pairing");
  return r;
}

inline Report run_boundary(int d, const RationalMatrix& F, std::optional<int> degenerate_index) {
  Report r{"boundary"};
  r.inputs = {{"dim", d}, {"form", json_io::dense_to_json(F)}};
  const Dimension dim(d, 4);
  BracketFn br;
  if (degenerate_index) {
    if (*degenerate_index < 1 || *degenerate_index > d) throw InputError("--degenerate-pairing index out of range");
    r.inputs["degenerate_pairing"] = *degenerate_index;
    br = degenerate_bracket(*degenerate_index);
  }
  require_symmetric_form(F, d);
  const RationalMatrix B = br ? pairing_gram(dim, br) : pairing_gram(dim);
  r.payload["gram"] = json_io::dense_to_json(B);
  const auto g = boundary_construct(F, dim, br);
  if (!g) {
    json witness = json::array();
    const auto n = static_cast<std::size_t>(2 * d);
    for (std::size_t c = 0; c < n; ++c) {
      Vector rhs(n);
      for (std::size_t k = 0; k < n; ++k) rhs[k] = F.get(k, c);
      if (!solve(B, rhs)) witness.push_back(w_name(d, static_cast<int>(c)));
    }
    r.violation("boundary", "f1 is not Q_l of any g: columns outside the image of the Gram matrix", witness);
    return r;
  }
  r.payload["g"] = json_io::dense_to_json(*g);
  r.payload["substitution_verified"] = boundary_defects(F, *g, d, br).empty();
  return r;
}

inline Report run_invariants(int d) {
  Report r{"invariants"};
  r.inputs = {{"dim", d}};
  const auto inv = invariant_form_space(Dimension(d, 4));
  json basis = json::array();
  for (const auto& F : inv.basis) basis.push_back(json_io::dense_to_json(F));
  r.payload = {{"dimension", inv.basis.size()},
               {"proportional_to_pairing", inv.proportional_to_pairing},
               {"basis", basis}};
  if (inv.basis.size() != 1 || !inv.proportional_to_pairing)
    r.violation("invariance", "invariant symmetric forms are not the multiples of the pairing");
  return r;
}

// ---------------------------------------------------------------------------

inline FiniteBialgebra load_bialgebra(const std::string& spec) {
  if (auto A = FiniteBialgebra::builtin(spec)) return *A;
  if (std::filesystem::exists(spec)) return json_io::bialgebra_from_json(json_io::read_file(spec));
  std::string names;
  for (const auto& n : builtin_bialgebra_names()) names += (names.empty() ? "" : ", ") + n;
  throw InputError("unknown bialgebra '" + spec + "' (builtins: " + names + ", or a JSON file)");
}

inline int emit(const Report& r, const GlobalOptions& g, double elapsed_ms, std::ostream& out) {
  json j = r.to_json();
  if (g.timing) j["timing_ms"] = static_cast<long long>(elapsed_ms);
  if (!g.json_path.empty()) {
    std::ofstream f(g.json_path, std::ios::binary);
    if (!f) throw InputError("cannot write " + g.json_path);
    f << j.dump(2) << "\n";
  } else {
    detail::render_text(j, out, 0);
  }
  if (r.status == "pass") return 0;
  if (r.status == "fail") return 1;
  return 2;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with the big bracket, Gerstenhaber-Schack complexes and resolutions"};
  app.name("bigbracket");
  app.fallthrough();
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--json", g.json_path, "write the JSON report to PATH");
  app.add_option("--seed", g.seed, "seed for random property checks");
  app.add_option("--max-degree", g.max_degree, "highest cohomological degree to report");
  app.add_option("--cap", g.cap, "weight truncation for resolutions");
  app.add_flag("--timing", g.timing, "add elapsed milliseconds to the JSON report");

  int dim = 0;
  std::optional<int> opt_dim;
  std::string input, bialgebra, lie_file, builtin_lie, form_file;
  std::size_t random_triples = 10000;
  int max_total = 4;
  bool mutate = false;
  std::optional<int> degenerate;

  auto* vp = app.add_subcommand("verify-poisson", "check antisymmetry, Leibniz and Jacobi on basis elements");
  vp->add_option("--dim", dim, "dimension of V")->required();
  vp->add_option("--random-triples", random_triples, "sampled triples when exhaustive enumeration is off");

  auto* mc = app.add_subcommand("mc-check", "compute [h,h] for a degree-3 element");
  mc->add_option("--input", input, "element JSON")->required()->check(CLI::ExistingFile);
  mc->add_option("--dim", opt_dim, "dimension of V (default: largest index)");

  auto* cl = app.add_subcommand("classify", "classify a degree-3 element as a (quasi/proto) Lie bialgebra");
  cl->add_option("--input", input, "element JSON")->required()->check(CLI::ExistingFile);
  cl->add_option("--dim", opt_dim, "dimension of V (default: largest index)");

  auto* dc = app.add_subcommand("def-cohomology", "cohomology of (H, ad_h)");
  dc->add_option("--input", input, "element JSON")->required()->check(CLI::ExistingFile);
  dc->add_option("--dim", opt_dim, "dimension of V (default: largest index)");

  auto* gs = app.add_subcommand("gs-cohomology", "Gerstenhaber-Schack complex of a finite bialgebra");
  gs->add_option("--bialgebra", bialgebra, "builtin name or JSON file")->required();
  auto* max_total_opt = gs->add_option("--max-total", max_total, "largest total degree p+q");

  auto* hg = app.add_subcommand("hgs", "cohomology through the resolutions of a Lie algebra");
  auto* lie_opt = hg->add_option("--lie-algebra", lie_file, "structure constants JSON")->check(CLI::ExistingFile);
  auto* builtin_opt = hg->add_option("--builtin", builtin_lie, "abelian1|abelian2|abelian3|nonabelian2|heisenberg3|sl2");
  lie_opt->excludes(builtin_opt);

  auto* yo = app.add_subcommand("yoneda", "compare the Yoneda product with the product of H");
  yo->add_option("--dim", dim, "dimension of V (at most 3)")->required();

  auto* tc = app.add_subcommand("transport-check", "transport of the differential for abelian g");
  tc->add_option("--dim", dim, "dimension of g (at most 3)")->required();
  tc->add_flag("--mutate", mutate, "use a sign-corrupted induced differential");

  auto* fc = app.add_subcommand("formality-check", "degree census, boundary construction, invariant forms");
  fc->add_option("--dim", dim, "dimension of V (at most 4)")->required();

  auto* bd = app.add_subcommand("boundary", "solve Q_l(g) = f1 for a symmetric form");
  bd->add_option("--dim", dim, "dimension of V (at most 4)")->required();
  bd->add_option("--form", form_file, "symmetric form JSON")->required()->check(CLI::ExistingFile);
  bd->add_option("--degenerate-pairing", degenerate, "switch off the pairing of e_K with f_K");

  auto* iv = app.add_subcommand("invariants", "gl(V)-invariant symmetric forms on V + V*");
  iv->add_option("--dim", dim, "dimension of V (at most 4)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    if (*vp) report = run_verify_poisson(dim, random_triples, g.seed);
    else if (*mc) report = run_mc_check(detail::read_element(input), opt_dim);
    else if (*cl) report = run_classify(detail::read_element(input), opt_dim);
    else if (*dc) report = run_def_cohomology(detail::read_element(input), opt_dim, g.max_degree);
    else if (*gs) {
      const int total = max_total_opt->count() ? max_total : g.max_degree.value_or(max_total);
      report = run_gs_cohomology(load_bialgebra(bialgebra), total);
    } else if (*hg) {
      if (lie_file.empty() == builtin_lie.empty()) throw InputError("hgs needs exactly one of --lie-algebra, --builtin");
      std::optional<LieAlgebraData> lie;
      if (!lie_file.empty()) lie = json_io::lie_from_json(json_io::read_file(lie_file));
      else if (!(lie = LieAlgebraData::builtin(builtin_lie))) throw InputError("unknown builtin Lie algebra '" + builtin_lie + "'");
      report = run_hgs(*lie, g.cap.value_or(2));
    } else if (*yo) report = run_yoneda(dim);
    else if (*tc) report = run_transport_check(dim, g.cap.value_or(2), mutate);
    else if (*fc) report = run_formality_check(dim);
    else if (*bd) report = run_boundary(dim, json_io::form_from_json(json_io::read_file(form_file)), degenerate);
    else if (*iv) report = run_invariants(dim);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    if (!g.json_path.empty()) {
      Report failed{app.get_subcommands().front()->get_name()};
      failed.violation("input", e.what());
      failed.status = "error";
      std::ofstream(g.json_path, std::ios::binary) << failed.to_json().dump(2) << "\n";
    }
    return 2;
  } catch (const MathError& e) {
    report.command = app.get_subcommands().front()->get_name();
    report.status = "fail";
    report.violation("math", e.what());
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  try {
    return emit(report, g, ms, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bigbracket::cli
