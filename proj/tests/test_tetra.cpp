#include <bigbracket/tetra.hpp>

#include <gtest/gtest.h>

using namespace bigbracket;

namespace {

std::vector<Monomial> all_monomials(int d) {
  std::vector<Monomial> out;
  for (int n = 0; n <= 2 * d; ++n) {
    auto b = enumerate_basis(Dimension(d), n);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

Exponent ex(std::initializer_list<int> v) { return Exponent(v); }

Rational entry(const RationalMatrix& m, const ResolutionBasis& rows, const ResolutionBasis& cols,
               const ResolutionBasisElement& r, const ResolutionBasisElement& c) {
  return m.get(*rows.index_of(r), *cols.index_of(c));
}

}  // namespace

TEST(PBW, BasisSize) {
  for (int d = 1; d <= 3; ++d)
    for (int cap = 0; cap <= 3; ++cap) EXPECT_EQ(pbw_basis(d, cap).size(), binomial(d + cap, cap));
}

TEST(PBW, StraighteningNonabelian) {
  EnvelopingAlgebra U(LieAlgebraData::nonabelian2());
  // x2 x1 = x1 x2 + [x2, x1] = x1 x2 - x2
  const UElement expected{{ex({1, 1}), Rational(1)}, {ex({0, 1}), Rational(-1)}};
  EXPECT_EQ(U.word({1, 0}), expected);
}

TEST(PBW, MultiplicationIsAssociative) {
  EnvelopingAlgebra U(LieAlgebraData::sl2());
  const auto basis = pbw_basis(3, 2);
  for (const auto& a : basis)
    for (const auto& b : basis)
      for (const auto& c : basis) {
        UElement left, right;
        for (const auto& [e, x] : U.multiply(a, b))
          for (const auto& [f, y] : U.multiply(e, c)) left[f] += x * y;
        for (const auto& [e, x] : U.multiply(b, c))
          for (const auto& [f, y] : U.multiply(a, e)) right[f] += x * y;
        std::erase_if(left, [](const auto& t) { return t.second == 0; });
        std::erase_if(right, [](const auto& t) { return t.second == 0; });
        ASSERT_EQ(left, right);
      }
}

TEST(Induced, AbelianDegreeOne) {
  const auto g = LieAlgebraData::abelian(1);
  const auto m = induced_differential(g, 1, 1);
  const ResolutionBasis src(1, 1, 1), dst(1, 0, 1);
  // d(1 (x) x (x) 1) = x (x) 1 (x) 1 - 1 (x) 1 (x) x
  const ResolutionBasisElement gen{ex({0}), 1u, ex({0})};
  EXPECT_EQ(entry(m, dst, src, {ex({1}), 0u, ex({0})}, gen), 1);
  EXPECT_EQ(entry(m, dst, src, {ex({0}), 0u, ex({1})}, gen), -1);
  EXPECT_EQ(m.column(*src.index_of(gen)).size(), 2u);
}

TEST(Induced, NonabelianBracketTerm) {
  const auto g = LieAlgebraData::nonabelian2();
  const auto m = induced_differential(g, 2, 2);
  const ResolutionBasis src(2, 2, 2), dst(2, 1, 2);
  const ResolutionBasisElement gen{ex({0, 0}), 3u, ex({0, 0})};
  // (-1)^{1+2} 1 (x) [x1, x2] (x) 1 = -1 (x) x2 (x) 1
  EXPECT_EQ(entry(m, dst, src, {ex({0, 0}), 2u, ex({0, 0})}, gen), -1);
}

TEST(Coinduced, BinomialCoproduct) {
  const auto g = LieAlgebraData::abelian(1);
  const auto m = coinduced_differential(g, 0, 2);
  const ResolutionBasis src(1, 0, 2), dst(1, 1, 2);
  // d(x^2 (x) 1 (x) 1) = 2 x (x) x (x) 1
  const auto col = m.column(*src.index_of({ex({2}), 0u, ex({0})}));
  ASSERT_EQ(col.size(), 1u);
  EXPECT_EQ(col.begin()->first, *dst.index_of({ex({1}), 1u, ex({0})}));
  EXPECT_EQ(col.begin()->second, 2);
  // d(1 (x) 1 (x) 1) = 0
  EXPECT_TRUE(m.column(*src.index_of({ex({0}), 0u, ex({0})})).empty());
}

TEST(Resolutions, SquaresVanish) {
  for (const auto& g : {LieAlgebraData::abelian(1), LieAlgebraData::abelian(2), LieAlgebraData::abelian(3),
                        LieAlgebraData::nonabelian2(), LieAlgebraData::heisenberg3()})
    for (int cap = 1; cap <= 3; ++cap) {
      const int d = g.dim();
      for (int n = 2; n <= d; ++n)
        EXPECT_TRUE((induced_differential(g, n - 1, cap) * induced_differential(g, n, cap)).is_zero())
            << "induced d=" << d << " n=" << n << " cap=" << cap;
      for (int n = 0; n + 1 <= d; ++n)
        EXPECT_TRUE((coinduced_differential(g, n + 1, cap) * coinduced_differential(g, n, cap)).is_zero())
            << "coinduced d=" << d << " n=" << n << " cap=" << cap;
    }
}

TEST(Resolutions, InducedIsAugmented) {
  // eps (x) eps kills the image of d_1: the augmentation U (x) U -> k composed with d_1 is zero
  const auto g = LieAlgebraData::nonabelian2();
  const auto m = induced_differential(g, 1, 2);
  const ResolutionBasis dst(2, 0, 2);
  const auto unit = *dst.index_of({ex({0, 0}), 0u, ex({0, 0})});
  for (const auto& [c, v] : m.row(unit)) {
    (void)c;
    (void)v;
    ADD_FAILURE() << "d_1 hits 1 (x) 1";
  }
}

TEST(HomComplex, AbelianHasZeroDifferentialAndDimsOfH) {
  for (int d = 1; d <= 3; ++d) {
    const auto c = hom_complex(LieAlgebraData::abelian(d));
    for (int n = c.lo(); n < c.hi(); ++n) EXPECT_TRUE(c.differential(n)->is_zero());
    const auto dims = cohomology_dims(c);
    for (int n = 0; n <= 2 * d; ++n) {
      std::size_t expected = 0;
      for (int p = 0; p <= n; ++p) expected += binomial(d, p) * binomial(d, n - p);
      EXPECT_EQ(dims.at(n), expected);
    }
  }
}

TEST(HomComplex, NonabelianIsAComplex) {
  for (const auto& g : {LieAlgebraData::nonabelian2(), LieAlgebraData::heisenberg3(), LieAlgebraData::sl2()}) {
    const auto c = hom_complex(g);
    bool nonzero = false;
    for (int n = c.lo(); n < c.hi(); ++n) nonzero |= !c.differential(n)->is_zero();
    EXPECT_TRUE(nonzero);
    EXPECT_FALSE(c.square_zero_failure().has_value());
    EXPECT_NO_THROW(cohomology_dims(c));
  }
}

TEST(Yoneda, Examples) {
  const Element e1 = Element::generator(Generator::e(1)), f1 = Element::generator(Generator::f(1));
  EXPECT_EQ(yoneda_product(to_hom(e1, 1), to_hom(f1, 1)), to_hom(e1 * f1, 1));
  const auto unit = to_hom(Element::scalar(1), 2);
  for (const auto& m : all_monomials(2)) {
    const auto v = to_hom(Element(m), 2);
    EXPECT_EQ(yoneda_product(unit, v), v);
    EXPECT_EQ(yoneda_product(v, unit), v);
  }
}

// The identification e_I f_J -> (-1)^{|J|(|J|-1)/2} (x_J -> x_I) is the only
// sign of the form (-1)^{a p(p-1)/2 + b q(q-1)/2 + c pq} making the Yoneda
// product agree with the product of H; the remaining candidates fail somewhere.
TEST(Yoneda, EqualsProductOfHExhaustively) {
  std::size_t pairs = 0;
  for (int d = 1; d <= 2; ++d) {
    const auto all = all_monomials(d);
    for (const auto& x : all)
      for (const auto& y : all) {
        ++pairs;
        EXPECT_EQ(yoneda_product(to_hom(Element(x), d), to_hom(Element(y), d)), to_hom(Element(x) * Element(y), d))
            << x.name() << " * " << y.name();
      }
  }
  EXPECT_EQ(pairs, 16u + 256u);
}

TEST(Yoneda, OtherIdentificationSignsFail) {
  const int d = 2;
  const auto all = all_monomials(d);
  int passing = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        auto ident = [&](const Element& x) {
          HomComplexElement out(d);
          for (const auto& [m, co] : x.terms()) {
            const int p = m.p(), q = m.q();
            const int e = a * (p * (p - 1) / 2) + b * (q * (q - 1) / 2) + c * p * q;
            out.component(q, p).add(detail::wedge_index(d, m.e_mask), detail::wedge_index(d, m.f_mask),
                                    e % 2 ? -co : co);
          }
          out.normalize();
          return out;
        };
        bool ok = true;
        for (const auto& x : all)
          for (const auto& y : all)
            ok = ok && yoneda_product(ident(Element(x)), ident(Element(y))) == ident(Element(x) * Element(y));
        if (ok) {
          ++passing;
          EXPECT_EQ((std::array{a, b, c}), (std::array{0, 1, 0}));
        }
      }
  EXPECT_EQ(passing, 1);
}

TEST(Yoneda, AssociativeAndGradedCommutative) {
  const int d = 2;
  const auto all = all_monomials(d);
  for (const auto& x : all)
    for (const auto& y : all) {
      const auto X = to_hom(Element(x), d), Y = to_hom(Element(y), d);
      const Rational s = (x.degree() * y.degree()) % 2 ? -1 : 1;
      EXPECT_EQ(yoneda_product(X, Y), to_hom(s * (Element(y) * Element(x)), d));
      for (const auto& z : all) {
        const auto Z = to_hom(Element(z), d);
        ASSERT_EQ(yoneda_product(yoneda_product(X, Y), Z), yoneda_product(X, yoneda_product(Y, Z)));
      }
    }
}

TEST(Transport, AbelianDifferentialVanishes) {
  for (int d = 1; d <= 2; ++d)
    for (int cap = 1; cap <= 2; ++cap) {
      const auto rep = abelian_transport_check(d, cap);
      EXPECT_TRUE(rep.passed()) << d << " " << cap;
      EXPECT_GT(rep.maps_checked, 0u);
    }
}

TEST(Transport, CorruptedSignIsDetected) {
  InducedOptions bad;
  bad.drop_alternating_sign = true;
  const auto rep = abelian_transport_check(2, 2, bad);
  EXPECT_FALSE(rep.passed());
  EXPECT_FALSE(rep.failures.empty());
}
