#pragma once

// The big bracket on H: a degree -2 bracket, [e_i, f_j] = [f_j, e_i] = delta_ij,
// [e_i, e_j] = [f_i, f_j] = 0, extended to H by the Leibniz rule.
//
// Conventions (s(a) = |a| - 2 is the degree in H[2]):
//   [a, bc] = [a, b] c + (-1)^{s(a)|b|} b [a, c]
//   [a, b]  = -(-1)^{s(a)s(b)} [b, a]
//
// Two independent implementations are provided: `bracket` expands the
// arguments recursively with the Leibniz rule, `bracket_oracle` evaluates the
// bi-derivation  sum_i (a <-d/de_i)(d/df_i-> b) + (a <-d/df_i)(d/de_i-> b).

#include <bigbracket/error.hpp>
#include <bigbracket/graded.hpp>
#include <bigbracket/linalg.hpp>

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace bigbracket {

namespace detail {

inline int parity_sign(int k) { return k % 2 ? -1 : 1; }

// Splits off the first generator of a monomial with >= 2 generators: m = g * rest.
inline std::pair<Monomial, Monomial> split_first(const Monomial& m) {
  Monomial g, rest = m;
  if (m.e_mask) {
    g.e_mask = m.e_mask & (~m.e_mask + 1);
    rest.e_mask &= rest.e_mask - 1;
  } else {
    g.f_mask = m.f_mask & (~m.f_mask + 1);
    rest.f_mask &= rest.f_mask - 1;
  }
  return {g, rest};
}

inline Rational generator_pairing(const Monomial& x, const Monomial& y, const Rational& scale) {
  if ((x.e_mask && y.f_mask && x.e_mask == y.f_mask) || (x.f_mask && y.e_mask && x.f_mask == y.e_mask))
    return scale;
  return 0;
}

inline Element bracket_recursive(const Monomial& a, const Monomial& b, const Rational& scale) {
  const int da = a.degree(), db = b.degree();
  if (da == 0 || db == 0) return {};
  if (da >= 2) {
    // [x a', b] = x [a', b] + (-1)^{|a'||b|} [x, b] a'
    auto [x, rest] = split_first(a);
    Element out = multiply(Element(x), bracket_recursive(rest, b, scale));
    Element tail = multiply(bracket_recursive(x, b, scale), Element(rest));
    out += Rational(parity_sign(rest.degree() * db)) * tail;
    return out;
  }
  if (db >= 2) {
    // [x, y b'] = [x, y] b' - y [x, b']
    auto [y, rest] = split_first(b);
    Element out = generator_pairing(a, y, scale) * Element(rest);
    out -= multiply(Element(y), bracket_recursive(a, rest, scale));
    return out;
  }
  return Element::scalar(generator_pairing(a, b, scale));
}

// a <-d/dg : move g to the right end of a, then drop it.
inline std::optional<std::pair<int, Monomial>> right_derivative(const Monomial& a, const Monomial& g) {
  if (!(a.e_mask & g.e_mask) && !(a.f_mask & g.f_mask)) return std::nullopt;
  Monomial rest{a.e_mask & ~g.e_mask, a.f_mask & ~g.f_mask};
  // generators of a that come after g in normal order
  int after = 0;
  if (g.e_mask) {
    after = std::popcount(a.e_mask & ~((g.e_mask << 1) - 1)) + a.q();
  } else {
    after = std::popcount(a.f_mask & ~((g.f_mask << 1) - 1));
  }
  return std::pair{parity_sign(after), rest};
}

// d/dg-> b : move g to the left end of b, then drop it.
inline std::optional<std::pair<int, Monomial>> left_derivative(const Monomial& b, const Monomial& g) {
  if (!(b.e_mask & g.e_mask) && !(b.f_mask & g.f_mask)) return std::nullopt;
  Monomial rest{b.e_mask & ~g.e_mask, b.f_mask & ~g.f_mask};
  int before = 0;
  if (g.e_mask) {
    before = std::popcount(b.e_mask & (g.e_mask - 1));
  } else {
    before = b.p() + std::popcount(b.f_mask & (g.f_mask - 1));
  }
  return std::pair{parity_sign(before), rest};
}

}  // namespace detail

/// Big bracket via recursive Leibniz expansion. `pairing` rescales <f_i, e_i>.
inline Element bracket(const Element& a, const Element& b, const Rational& pairing = 1) {
  Element out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Element t = detail::bracket_recursive(ma, mb, pairing);
      if (!t.is_zero()) out += Rational(ca * cb) * t;
    }
  return out;
}

/// Big bracket as an odd bi-derivation built from partial derivatives.
inline Element bracket_oracle(const Element& a, const Element& b, const Rational& pairing = 1) {
  Element out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const std::uint32_t pairs = (ma.e_mask & mb.f_mask) | (ma.f_mask & mb.e_mask);
      for (std::uint32_t rest = pairs; rest; rest &= rest - 1) {
        const std::uint32_t i = rest & (~rest + 1);
        // (a <-d/de_i)(d/df_i-> b) and (a <-d/df_i)(d/de_i-> b)
        for (const auto& [ga, gb] : {std::pair{Monomial{i, 0}, Monomial{0, i}},
                                     std::pair{Monomial{0, i}, Monomial{i, 0}}}) {
          auto left = detail::right_derivative(ma, ga);
          auto right = detail::left_derivative(mb, gb);
          if (!left || !right) continue;
          auto prod = multiply(left->second, right->second);
          if (!prod) continue;
          out.add(prod->second, Rational(ca * cb * pairing) *
                                    (left->first * right->first * prod->first));
        }
      }
    }
  }
  return out;
}

using BracketFn = std::function<Element(const Element&, const Element&)>;

/// Gram matrix [w_a, w_b] on W, with w = (e_1..e_d, f_1..f_d).
inline RationalMatrix pairing_gram(const Dimension& dim, const BracketFn& br = [](const Element& a, const Element& b) { return bracket(a, b); }) {
  const int d = dim.value();
  RationalMatrix g(2 * d, 2 * d);
  auto w = [d](int k) {
    return Element::generator(k < d ? Generator::e(k + 1) : Generator::f(k - d + 1));
  };
  for (int a = 0; a < 2 * d; ++a)
    for (int b = 0; b < 2 * d; ++b) {
      Element v = br(w(a), w(b));
      g.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b), v.coefficient(Monomial::unit()));
    }
  return g;
}

// ---------------------------------------------------------------------------
// Poisson identities

struct PoissonViolation {
  std::string identity;  // "antisymmetry", "leibniz" or "jacobi"
  std::vector<Monomial> witness;
  Element defect;  // lhs - rhs
};

struct PoissonReport {
  int dimension = 0;
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  bool exhaustive_triples = false;
  std::vector<PoissonViolation> violations;
  bool passed() const { return violations.empty(); }
};

struct PoissonOptions {
  /// Triples are enumerated exhaustively up to this dimension, sampled above it.
  int exhaustive_triple_max_dimension = 2;
  std::size_t random_triples = 10000;
  std::uint64_t seed = 1;
  std::size_t max_violations = 50;
};

namespace detail {

inline std::vector<Monomial> full_basis(const Dimension& d) {
  std::vector<Monomial> all;
  for (int n = 0; n <= 2 * d.value(); ++n) {
    auto b = enumerate_basis(d, n);
    all.insert(all.end(), b.begin(), b.end());
  }
  return all;
}

}  // namespace detail

/// Checks antisymmetry on all basis pairs and Leibniz and Jacobi on basis
/// triples, for the supplied bracket.
inline PoissonReport verify_poisson(const Dimension& dim, const BracketFn& br,
                                    const PoissonOptions& opt = {}) {
  PoissonReport report;
  report.dimension = dim.value();
  const auto basis = detail::full_basis(dim);
  auto record = [&](const char* what, std::vector<Monomial> w, Element defect) {
    if (report.violations.size() < opt.max_violations)
      report.violations.push_back({what, std::move(w), std::move(defect)});
  };
  auto s = [](const Monomial& m) { return m.degree() - 2; };
  auto sgn = [](int k) { return Rational(k % 2 ? -1 : 1); };

  for (const auto& a : basis)
    for (const auto& b : basis) {
      ++report.pairs_checked;
      Element defect = br(Element(a), Element(b)) + sgn(s(a) * s(b)) * br(Element(b), Element(a));
      if (!defect.is_zero()) record("antisymmetry", {a, b}, defect);
    }

  auto check_triple = [&](const Monomial& a, const Monomial& b, const Monomial& c) {
    ++report.triples_checked;
    const Element A(a), B(b), C(c);
    Element leibniz = br(A, multiply(B, C)) - multiply(br(A, B), C) -
                      sgn(s(a) * b.degree()) * multiply(B, br(A, C));
    if (!leibniz.is_zero()) record("leibniz", {a, b, c}, leibniz);
    Element jacobi = sgn(s(a) * s(c)) * br(A, br(B, C)) + sgn(s(b) * s(a)) * br(B, br(C, A)) +
                     sgn(s(c) * s(b)) * br(C, br(A, B));
    if (!jacobi.is_zero()) record("jacobi", {a, b, c}, jacobi);
  };

  if (dim.value() <= opt.exhaustive_triple_max_dimension) {
    report.exhaustive_triples = true;
    for (const auto& a : basis)
      for (const auto& b : basis)
        for (const auto& c : basis) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (std::size_t k = 0; k < opt.random_triples; ++k) {
      const auto& a = basis[pick(rng)];
      const auto& b = basis[pick(rng)];
      const auto& c = basis[pick(rng)];
      check_triple(a, b, c);
    }
  }
  return report;
}

inline PoissonReport verify_poisson(const Dimension& dim, const PoissonOptions& opt = {}) {
  return verify_poisson(
      dim, [](const Element& a, const Element& b) { return bracket(a, b); }, opt);
}

// ---------------------------------------------------------------------------
// Proto-Lie bialgebras

/// A degree-3 element h = lambda + delta + alpha + beta of H.
class ProtoStructure {
 public:
  explicit ProtoStructure(Element h) : h_(std::move(h)) {
    if (!h_.is_homogeneous_of_degree(3))
      throw MathError("proto-structure must be of pure degree 3");
  }
  const Element& h() const { return h_; }
  Element lambda() const { return h_.component(1, 2); }  // V (x) /\^2 V*
  Element delta() const { return h_.component(2, 1); }   // /\^2 V (x) V*
  Element alpha() const { return h_.component(3, 0); }   // /\^3 V
  Element beta() const { return h_.component(0, 3); }    // /\^3 V*
  int max_index() const {
    int m = 0;
    for (const auto& [mono, c] : h_.terms()) m = std::max(m, mono.max_index());
    return m;
  }

 private:
  Element h_;
};

struct McResult {
  Element square;  // [h, h]
  bool is_mc;
};

inline McResult mc_check(const ProtoStructure& h) {
  Element sq = bracket(h.h(), h.h());
  const bool zero = sq.is_zero();
  return {std::move(sq), zero};
}

enum class Classification { LieBialgebra, LieQuasiBialgebra, LieCoquasiBialgebra, ProtoBialgebra, NotMC };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::LieBialgebra: return "LieBialgebra";
    case Classification::LieQuasiBialgebra: return "LieQuasiBialgebra";
    case Classification::LieCoquasiBialgebra: return "LieCoquasiBialgebra";
    case Classification::ProtoBialgebra: return "ProtoBialgebra";
    case Classification::NotMC: return "NotMC";
  }
  return "?";
}

inline Classification classify_proto(const ProtoStructure& h) {
  if (!mc_check(h).is_mc) return Classification::NotMC;
  const bool alpha0 = h.alpha().is_zero(), beta0 = h.beta().is_zero();
  if (alpha0 && beta0) return Classification::LieBialgebra;
  if (beta0) return Classification::LieQuasiBialgebra;
  if (alpha0) return Classification::LieCoquasiBialgebra;
  return Classification::ProtoBialgebra;
}

/// Matrix of a |-> [x, a] from H^n to H^{n+shift}, shift = |x| - 2.
inline RationalMatrix ad_matrix(const Element& x, int shift, const Dimension& dim, int n) {
  const DegreeBasis src(dim, n), dst(dim, n + shift);
  RationalMatrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    Element image = bracket(x, Element(src[j]));
    for (const auto& [mono, c] : image.terms()) {
      auto i = dst.index_of(mono);
      if (!i) throw MathError("ad: image outside the expected degree");
      m.set(*i, j, c);
    }
  }
  return m;
}

/// (H, ad_h) as a complex over degrees 0..2d, without checking [h, h] = 0.
inline ChainComplexRep ad_unchecked(const ProtoStructure& h, const Dimension& dim) {
  if (h.max_index() > dim.value()) throw InputError("h uses indices beyond the dimension");
  const int d = dim.value();
  std::vector<std::size_t> dims;
  std::vector<RationalMatrix> maps;
  for (int n = 0; n <= 2 * d; ++n) {
    dims.push_back(dim_by_degree(d, n));
    if (n < 2 * d) maps.push_back(ad_matrix(h.h(), 1, dim, n));
  }
  return ChainComplexRep(0, std::move(dims), std::move(maps));
}

/// The deformation complex (H, d_h = ad_h); requires [h, h] = 0.
inline ChainComplexRep ad(const ProtoStructure& h, const Dimension& dim) {
  if (h.max_index() > dim.value()) throw InputError("h uses indices beyond the dimension");
  auto mc = mc_check(h);
  if (!mc.is_mc) throw MathError("ad: [h,h] = " + mc.square.to_string() + " is nonzero");
  return ad_unchecked(h, dim);
}

inline std::map<int, std::size_t> deformation_cohomology(const ProtoStructure& h, const Dimension& dim) {
  return cohomology_dims(ad(h, dim));
}

}  // namespace bigbracket
