#include <bigbracket/gs_complex.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace bigbracket;

namespace {

using Last = GSSignConvention::Last;

std::vector<GSSignConvention> all_conventions() {
  std::vector<GSSignConvention> out;
  for (int offset : {0, 1})
    for (Last last : {Last::PMinusOne, Last::QPlusOne, Last::Q})
      for (bool twist : {false, true}) out.push_back({offset, last, twist});
  return out;
}

bool all_squares_vanish(const FiniteBialgebra& A, int max_total, const GSSignConvention& conv) {
  for (const auto& c : gs_square_checks(A, max_total, conv))
    if (!c.ok()) return false;
  return true;
}

Rational sign(int k) { return k % 2 ? -1 : 1; }

GSCochain random_cochain(std::mt19937_64& rng, const FiniteBialgebra& A, int p, int q) {
  std::uniform_int_distribution<int> coef(-3, 3);
  GSCochain c = GSCochain::zero(A, p, q);
  for (std::size_t r = 0; r < c.phi.rows(); ++r)
    for (std::size_t k = 0; k < c.phi.cols(); ++k) c.phi.set(r, k, coef(rng));
  return c;
}

}  // namespace

TEST(FiniteBialgebra, BuiltinsSatisfyAxioms) {
  for (const auto& name : builtin_bialgebra_names()) {
    const auto A = FiniteBialgebra::builtin(name);
    ASSERT_TRUE(A.has_value()) << name;
    EXPECT_FALSE(A->failed_axiom().has_value()) << name;
  }
  EXPECT_FALSE(FiniteBialgebra::builtin("quaternions").has_value());
  EXPECT_EQ(FiniteBialgebra::trivial().dim(), 1u);
  EXPECT_EQ(FiniteBialgebra::group(2).dim(), 2u);
  EXPECT_EQ(FiniteBialgebra::sweedler4().dim(), 4u);
}

TEST(FiniteBialgebra, GroupZ2Presentation) {
  const auto A = FiniteBialgebra::group(2);
  EXPECT_EQ(A.product(1, 1), (SparseVector{{0, Rational(1)}}));  // g^2 = 1
  ASSERT_EQ(A.coproduct(1).size(), 1u);                          // Delta g = g (x) g
  EXPECT_EQ(std::get<0>(A.coproduct(1)[0]), 1u);
  EXPECT_EQ(std::get<1>(A.coproduct(1)[0]), 1u);
}

TEST(FiniteBialgebra, SweedlerPresentation) {
  // basis 1, g, x, gx
  const auto A = FiniteBialgebra::sweedler4();
  EXPECT_EQ(A.product(1, 1), (SparseVector{{0, Rational(1)}}));   // g g = 1
  EXPECT_TRUE(A.product(2, 2).empty());                            // x x = 0
  EXPECT_EQ(A.product(2, 1), (SparseVector{{3, Rational(-1)}}));  // x g = -g x
  EXPECT_EQ(A.product(1, 2), (SparseVector{{3, Rational(1)}}));   // g x = gx
  EXPECT_EQ(A.counit(), (Vector{1, 1, 0, 0}));
}

TEST(FiniteBialgebra, AxiomViolationsAreNamed) {
  const auto G = FiniteBialgebra::group(2);
  // Delta(g) = g (x) 1 is not coassociative-compatible with the counit
  RationalMatrix delta = G.delta();
  delta.set(3, 1, 0);
  delta.set(2, 1, 1);
  try {
    FiniteBialgebra("broken", G.mu(), delta, G.unit(), G.counit());
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("counit"), std::string::npos) << e.what();
  }
  // non-associative product on a 2-dim space: g g = g and g 1 = 0
  RationalMatrix mu = G.mu();
  mu.set(1, 2, 0);
  EXPECT_THROW(FiniteBialgebra("broken", mu, G.delta(), G.unit(), G.counit()), InputError);
  EXPECT_THROW(FiniteBialgebra("broken", G.mu(), G.delta(), Vector{1}, G.counit()), InputError);
}

// The sign factors of d2 are chosen as the unique member of the family that
// makes d1^2, d2^2 and d1 d2 + d2 d1 vanish on the trivial and group_z2 bialgebras.
TEST(GSSignConvention, UniqueConventionIsTheFrozenOne) {
  std::vector<GSSignConvention> passing;
  for (const auto& conv : all_conventions())
    if (all_squares_vanish(FiniteBialgebra::trivial(), 4, conv) && all_squares_vanish(FiniteBialgebra::group(2), 4, conv))
      passing.push_back(conv);
  ASSERT_EQ(passing.size(), 1u);
  EXPECT_EQ(passing.front(), kGSConvention);
}

TEST(GSSignConvention, LiteralLastSignBreaksD2Squared) {
  const GSSignConvention literal{0, Last::PMinusOne, false};
  bool broken = false;
  for (const auto& c : gs_square_checks(FiniteBialgebra::trivial(), 3, literal)) broken |= !c.d2d2_zero;
  EXPECT_TRUE(broken);
}

TEST(GSDifferential, SquaresVanishOnAllBuiltins) {
  for (const auto& name : builtin_bialgebra_names()) {
    const int max_total = name == "sweedler4" ? 3 : 4;
    for (const auto& c : gs_square_checks(*FiniteBialgebra::builtin(name), max_total)) {
      EXPECT_TRUE(c.d1d1_zero) << name << " (" << c.p << "," << c.q << ")";
      EXPECT_TRUE(c.d2d2_zero) << name << " (" << c.p << "," << c.q << ")";
      EXPECT_TRUE(c.anticommute) << name << " (" << c.p << "," << c.q << ")";
    }
  }
}

// On the trivial bialgebra every Hom space is k and each term of the
// differentials evaluates to its sign factor.
TEST(GSDifferential, TrivialBialgebraDirectEvaluation) {
  const auto A = FiniteBialgebra::trivial();
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= 4; ++q) {
      GSCochain one = GSCochain::zero(A, p, q);
      one.phi.set(0, 0, 1);
      // a_0 phi(...) - sum phi(.. a_i a_{i+1} ..) + (-1)^{p+1} phi(...) a_p
      Rational d1 = 1;
      for (int i = 0; i < p; ++i) d1 += sign(i + 1);
      d1 += sign(p + 1);
      // twist (-1)^{p+1} of [ first + sum_{i=1}^q (-1)^i + (-1)^{q+1} ]
      Rational d2 = 1;
      for (int i = 1; i <= q; ++i) d2 += sign(i);
      d2 += sign(q + 1);
      d2 *= sign(p + 1);
      EXPECT_EQ(gs_d1(one, A).phi.get(0, 0), d1) << p << "," << q;
      EXPECT_EQ(gs_d2(one, A).phi.get(0, 0), d2) << p << "," << q;
    }
  // p = q = 1, phi = id: a_0 phi(a_1) - phi(a_0 a_1) + phi(a_0) a_1 = 1
  GSCochain id = GSCochain::zero(A, 1, 1);
  id.phi.set(0, 0, 1);
  EXPECT_EQ(gs_d1(id, A).phi.get(0, 0), 1);
}

TEST(GSDifferential, ZeroCochain) {
  const auto A = FiniteBialgebra::group(2);
  const auto z = GSCochain::zero(A, 2, 1);
  const auto [d1, d2] = gs_differential(z, A);
  EXPECT_TRUE(d1.phi.is_zero());
  EXPECT_TRUE(d2.phi.is_zero());
  EXPECT_EQ(d1.p, 3);
  EXPECT_EQ(d2.q, 2);
}

TEST(GSDifferential, GroupZ2Examples) {
  const auto A = FiniteBialgebra::group(2);
  // phi(b) = eps(b) 1
  GSCochain counit_like = GSCochain::zero(A, 1, 1);
  for (std::size_t k = 0; k < 2; ++k) counit_like.phi.set(0, k, A.counit()[k]);
  EXPECT_TRUE(gs_d1(gs_d1(counit_like, A), A).phi.is_zero());
  GSCochain id = GSCochain::zero(A, 1, 1);
  id.phi = RationalMatrix::identity(2);
  EXPECT_TRUE(gs_d2(gs_d2(id, A), A).phi.is_zero());
}

TEST(GSDifferential, Linearity) {
  std::mt19937_64 rng(17);
  const auto A = FiniteBialgebra::sweedler4();
  for (int trial = 0; trial < 5; ++trial) {
    const int p = 1 + trial % 2, q = 1 + (trial / 2) % 2;
    const auto x = random_cochain(rng, A, p, q), y = random_cochain(rng, A, p, q);
    const Rational a(-2, 3);
    GSCochain combo{p, q, a * x.phi + y.phi};
    EXPECT_EQ(gs_d1(combo, A).phi, a * gs_d1(x, A).phi + gs_d1(y, A).phi);
    EXPECT_EQ(gs_d2(combo, A).phi, a * gs_d2(x, A).phi + gs_d2(y, A).phi);
  }
}

TEST(GSTotalComplex, TrivialDimensionsCountBlocks) {
  const auto total = gs_total_complex(FiniteBialgebra::trivial(), 6);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(total.complex.dim(n), static_cast<std::size_t>(std::max(0, n - 1)));
}

TEST(GSCohomology, TrivialAndGroups) {
  const auto trivial = gs_cohomology(FiniteBialgebra::trivial(), 4);
  EXPECT_LE(trivial.at(0), 1u);
  EXPECT_EQ(trivial.size(), 4u);  // degrees 0..3
  for (const auto& name : builtin_bialgebra_names()) {
    const int N = name == "sweedler4" ? 3 : 4;
    EXPECT_NO_THROW(gs_cohomology(*FiniteBialgebra::builtin(name), N)) << name;
  }
}

TEST(GSCohomology, WrongConventionIsReportedWithItsBlock) {
  const GSSignConvention literal{0, Last::PMinusOne, false};
  try {
    gs_cohomology(FiniteBialgebra::trivial(), 4, literal);
    FAIL();
  } catch (const SquareZeroError& e) {
    EXPECT_NE(std::string(e.what()).find("(p,q)"), std::string::npos) << e.what();
  }
}

TEST(Kron, Shapes) {
  const auto I2 = RationalMatrix::identity(2);
  EXPECT_EQ(kron(I2, I2), RationalMatrix::identity(4));
  RationalMatrix a(1, 2);
  a.set(0, 1, 3);
  const auto k = kron(a, I2);
  EXPECT_EQ(k.rows(), 2u);
  EXPECT_EQ(k.cols(), 4u);
  EXPECT_EQ(k.get(1, 3), 3);
}
