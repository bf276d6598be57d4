#pragma once

// Induced and coinduced resolutions of A = U(g) as an A-tetramodule, truncated
// by weight, and the reduced hom-complex (/\g (x) /\g*, ad_lambda).
//
// P_n = A (x) /\^n g (x) A and Q^n = A (x) /\^n g (x) A share the basis
// a (x) x_N (x) b with a, b PBW monomials. The weight of a basis vector is
// deg a + |N| + deg b; both differentials map weight <= cap into weight <= cap,
// so the truncations are honest subcomplexes / quotient maps.

#include <bigbracket/bracket.hpp>
#include <bigbracket/error.hpp>
#include <bigbracket/graded.hpp>
#include <bigbracket/lie.hpp>
#include <bigbracket/linalg.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace bigbracket {

using Exponent = std::vector<int>;  // PBW monomial x_1^{a_1} ... x_d^{a_d}
using UElement = std::map<Exponent, Rational>;

inline int total_degree(const Exponent& a) { return std::accumulate(a.begin(), a.end(), 0); }

/// All PBW exponents over d variables of total degree <= cap, by degree then lex.
inline std::vector<Exponent> pbw_basis(int d, int cap) {
  std::vector<Exponent> out;
  for (int deg = 0; deg <= cap; ++deg) {
    Exponent e(static_cast<std::size_t>(d), 0);
    // enumerate compositions of deg into d parts, lexicographically descending in e[0]
    std::vector<Exponent> level;
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == d - 1) {
        e[static_cast<std::size_t>(pos)] = left;
        level.push_back(e);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[static_cast<std::size_t>(pos)] = v;
        self(self, pos + 1, left - v);
      }
    };
    rec(rec, 0, deg);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

/// Multiplication in U(g) in the PBW basis, straightening with the structure constants.
class EnvelopingAlgebra {
 public:
  explicit EnvelopingAlgebra(const LieAlgebraData& g) : g_(g) {}

  const LieAlgebraData& lie() const { return g_; }
  int dim() const { return g_.dim(); }

  /// Normal form of a word x_{w_1} ... x_{w_m} (0-based letters).
  const UElement& word(const std::vector<int>& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    UElement out;
    std::size_t pos = 0;
    while (pos + 1 < w.size() && w[pos] <= w[pos + 1]) ++pos;
    if (pos + 1 >= w.size()) {
      Exponent e(static_cast<std::size_t>(dim()), 0);
      for (int letter : w) ++e[static_cast<std::size_t>(letter)];
      out.emplace(std::move(e), 1);
    } else {
      // x_a x_b = x_b x_a + [x_a, x_b] for a > b
      const int a = w[pos], b = w[pos + 1];
      std::vector<int> swapped = w;
      std::swap(swapped[pos], swapped[pos + 1]);
      accumulate(out, word(swapped), 1);
      for (int k = 0; k < dim(); ++k) {
        const Rational& c = g_.c(a, b, k);
        if (c == 0) continue;
        std::vector<int> shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
        shorter.push_back(k);
        shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.end());
        accumulate(out, word(shorter), c);
      }
    }
    return memo_.emplace(w, std::move(out)).first->second;
  }

  UElement multiply(const Exponent& a, const Exponent& b) {
    std::vector<int> w = letters(a);
    auto wb = letters(b);
    w.insert(w.end(), wb.begin(), wb.end());
    return word(w);
  }

  /// a * x_i
  UElement times_generator(const Exponent& a, int i) {
    auto w = letters(a);
    w.push_back(i);
    return word(w);
  }
  /// x_i * b
  UElement generator_times(int i, const Exponent& b) {
    std::vector<int> w{i};
    auto wb = letters(b);
    w.insert(w.end(), wb.begin(), wb.end());
    return word(w);
  }

  static std::vector<int> letters(const Exponent& a) {
    std::vector<int> w;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (int k = 0; k < a[i]; ++k) w.push_back(static_cast<int>(i));
    return w;
  }

 private:
  static void accumulate(UElement& acc, const UElement& x, const Rational& s) {
    for (const auto& [e, c] : x) {
      auto [it, inserted] = acc.try_emplace(e, s * c);
      if (!inserted) {
        it->second += s * c;
        if (it->second == 0) acc.erase(it);
      }
    }
  }

  LieAlgebraData g_;
  std::map<std::vector<int>, UElement> memo_;
};

/// Subsets of {1..d} of size n as bitmasks, in lexicographic order.
inline std::vector<std::uint32_t> wedge_basis(int d, int n) {
  std::vector<std::uint32_t> out;
  if (n < 0 || n > d) return out;
  for (const auto& m : enumerate_basis(Dimension(d, kHardMaxDimension), n))
    if (m.f_mask == 0) out.push_back(m.e_mask);
  return out;
}

/// x_i /\ x_N = sign * x_{N+i}; sign 0 when i is in N. (i is 0-based.)
inline int wedge_left(int i, std::uint32_t n_mask) {
  const std::uint32_t b = std::uint32_t{1} << i;
  if (n_mask & b) return 0;
  return std::popcount(n_mask & (b - 1)) % 2 ? -1 : 1;
}
/// x_N /\ x_i
inline int wedge_right(int i, std::uint32_t n_mask) {
  const std::uint32_t b = std::uint32_t{1} << i;
  if (n_mask & b) return 0;
  return std::popcount(n_mask & ~((b << 1) - 1)) % 2 ? -1 : 1;
}

/// Basis a (x) x_N (x) b of the weight-truncated piece of degree n.
struct ResolutionBasisElement {
  Exponent left;
  std::uint32_t wedge;
  Exponent right;
  friend auto operator<=>(const ResolutionBasisElement&, const ResolutionBasisElement&) = default;
};

class ResolutionBasis {
 public:
  ResolutionBasis(int d, int n, int cap) {
    if (n < 0 || n > d || n > cap) return;
    const auto pbw = pbw_basis(d, cap - n);
    for (const auto& a : pbw)
      for (auto wedge : wedge_basis(d, n))
        for (const auto& b : pbw)
          if (total_degree(a) + n + total_degree(b) <= cap) {
            index_.emplace(ResolutionBasisElement{a, wedge, b}, elements_.size());
            elements_.push_back({a, wedge, b});
          }
  }
  std::size_t size() const { return elements_.size(); }
  const ResolutionBasisElement& operator[](std::size_t k) const { return elements_[k]; }
  std::optional<std::size_t> index_of(const ResolutionBasisElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<ResolutionBasisElement> elements_;
  std::map<ResolutionBasisElement, std::size_t> index_;
};

/// Knobs for mutation tests; the defaults give the genuine differential.
struct InducedOptions {
  bool drop_alternating_sign = false;  // omit (-1)^{i-1} on the a x_i term
};

/// d_n : P_n -> P_{n-1} on weight <= cap,
///   a x_N b |-> sum_i (-1)^{i-1} (a x_i (x) x_{N-i} (x) b - a (x) x_{N-i} (x) x_i b)
///             + sum_{i<j} (-1)^{i+j} a (x) [x_i, x_j] /\ x_{N-{i,j}} (x) b
inline RationalMatrix induced_differential(const LieAlgebraData& g, int n, int cap,
                                           const InducedOptions& opt = {}) {
  const int d = g.dim();
  if (n < 1 || n > d) throw InputError("induced_differential: need 1 <= n <= dim g");
  EnvelopingAlgebra U(g);
  const ResolutionBasis src(d, n, cap), dst(d, n - 1, cap);
  RationalMatrix m(dst.size(), src.size());
  auto put = [&](std::size_t col, const ResolutionBasisElement& e, const Rational& c) {
    if (c == 0) return;
    auto row = dst.index_of(e);
    if (!row) throw MathError("induced_differential: term escapes the weight truncation");
    m.add(*row, col, c);
  };
  for (std::size_t col = 0; col < src.size(); ++col) {
    const auto& [a, wedge, b] = src[col];
    std::vector<int> N;
    for (std::uint32_t w = wedge; w; w &= w - 1) N.push_back(std::countr_zero(w));
    for (std::size_t pos = 0; pos < N.size(); ++pos) {
      const int i = N[pos];
      const std::uint32_t rest = wedge & ~(std::uint32_t{1} << i);
      const Rational sign = pos % 2 ? -1 : 1;
      const Rational left_sign = opt.drop_alternating_sign ? Rational(1) : sign;
      for (const auto& [e, c] : U.times_generator(a, i)) put(col, {e, rest, b}, left_sign * c);
      for (const auto& [e, c] : U.generator_times(i, b)) put(col, {a, rest, e}, -sign * c);
    }
    for (std::size_t p1 = 0; p1 < N.size(); ++p1)
      for (std::size_t p2 = p1 + 1; p2 < N.size(); ++p2) {
        // positions are 1-based in the formula: (-1)^{(p1+1)+(p2+1)} = (-1)^{p1+p2}
        const Rational sign = (p1 + p2) % 2 ? -1 : 1;
        const std::uint32_t rest =
            wedge & ~(std::uint32_t{1} << N[p1]) & ~(std::uint32_t{1} << N[p2]);
        for (int k = 0; k < d; ++k) {
          const Rational& c = g.c(N[p1], N[p2], k);
          if (c == 0) continue;
          const int w = wedge_left(k, rest);
          if (w == 0) continue;
          put(col, {a, rest | (std::uint32_t{1} << k), b}, sign * c * w);
        }
      }
  }
  return m;
}

/// d_n : Q^n -> Q^{n+1} on weight <= cap,
///   a x_N b |-> D_r(a)' (x) D_r(a)'' /\ x_N (x) b - (-1)^n a (x) x_N /\ D_l(b)' (x) D_l(b)''
/// where D_r(a) (resp. D_l(b)) is the part of the coproduct in U(g) (x) g
/// (resp. g (x) U(g)). For a PBW monomial x^alpha that part is
/// sum_i alpha_i x^{alpha - e_i} (x) x_i, the coproduct being cocommutative.
/// The (-1)^n is the Koszul sign of carrying the primitive factor of b past x_N.
inline RationalMatrix coinduced_differential(const LieAlgebraData& g, int n, int cap) {
  const int d = g.dim();
  if (n < 0 || n > d) throw InputError("coinduced_differential: need 0 <= n <= dim g");
  const ResolutionBasis src(d, n, cap), dst(d, n + 1, cap);
  RationalMatrix m(dst.size(), src.size());
  const Rational right_sign = n % 2 ? 1 : -1;
  for (std::size_t col = 0; col < src.size(); ++col) {
    const auto& [a, wedge, b] = src[col];
    for (int i = 0; i < d; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (a[ui] > 0) {
        if (int w = wedge_left(i, wedge)) {
          Exponent a2 = a;
          --a2[ui];
          auto row = dst.index_of({a2, wedge | bit, b});
          if (!row) throw MathError("coinduced_differential: term escapes the weight truncation");
          m.add(*row, col, Rational(a[ui] * w));
        }
      }
      if (b[ui] > 0) {
        if (int w = wedge_right(i, wedge)) {
          Exponent b2 = b;
          --b2[ui];
          auto row = dst.index_of({a, wedge | bit, b2});
          if (!row) throw MathError("coinduced_differential: term escapes the weight truncation");
          m.add(*row, col, right_sign * Rational(b[ui] * w));
        }
      }
    }
  }
  return m;
}

/// (/\g (x) /\g*, ad_lambda) realised inside H with dim V = dim g.
inline ChainComplexRep hom_complex(const LieAlgebraData& g) {
  const Element lambda = lambda_element(g);
  const ProtoStructure h(lambda);
  if (!mc_check(h).is_mc) throw MathError("hom_complex: [lambda, lambda] != 0 (Jacobi fails)");
  return ad(h, Dimension(g.dim()));
}

// ---------------------------------------------------------------------------
// Yoneda product for abelian g = V

/// Components Hom(/\^p V, /\^q V) keyed by (p, q); bases from wedge_basis.
class HomComplexElement {
 public:
  explicit HomComplexElement(int d) : d_(d) {}

  int dim() const { return d_; }
  const std::map<std::pair<int, int>, RationalMatrix>& components() const { return parts_; }

  RationalMatrix& component(int p, int q) {
    auto it = parts_.find({p, q});
    if (it == parts_.end())
      it = parts_.emplace(std::pair{p, q}, RationalMatrix(wedge_basis(d_, q).size(),
                                                          wedge_basis(d_, p).size())).first;
    return it->second;
  }

  /// Drops zero components.
  void normalize() {
    for (auto it = parts_.begin(); it != parts_.end();)
      it = it->second.is_zero() ? parts_.erase(it) : std::next(it);
  }

  friend bool operator==(HomComplexElement a, HomComplexElement b) {
    a.normalize();
    b.normalize();
    return a.d_ == b.d_ && a.parts_ == b.parts_;
  }

 private:
  int d_;
  std::map<std::pair<int, int>, RationalMatrix> parts_;
};

namespace detail {
inline std::size_t wedge_index(int d, std::uint32_t mask) {
  const auto basis = wedge_basis(d, std::popcount(mask));
  return static_cast<std::size_t>(std::find(basis.begin(), basis.end(), mask) - basis.begin());
}
}  // namespace detail

/// u . v through the co-wedge on sources and the wedge on targets:
///   (u.v)(x_N) = sum_{N = S u T} sh(S,T) (-1)^{|v||S|} u(x_S) /\ v(x_T),
/// |v| = p + q for a component /\^p -> /\^q.
inline HomComplexElement yoneda_product(const HomComplexElement& u, const HomComplexElement& v) {
  if (u.dim() != v.dim()) throw InputError("yoneda_product: dimensions differ");
  const int d = u.dim();
  HomComplexElement out(d);
  for (const auto& [pq1, U] : u.components())
    for (const auto& [pq2, W] : v.components()) {
      const auto [p1, q1] = pq1;
      const auto [p2, q2] = pq2;
      if (p1 + p2 > d || q1 + q2 > d) continue;
      RationalMatrix& target = out.component(p1 + p2, q1 + q2);
      const auto sources = wedge_basis(d, p1 + p2);
      const auto s_basis = wedge_basis(d, p1);
      const auto t_basis = wedge_basis(d, p2);
      const auto a_basis = wedge_basis(d, q1);
      const auto b_basis = wedge_basis(d, q2);
      const int koszul = ((p2 + q2) * p1) % 2 ? -1 : 1;
      for (std::size_t col = 0; col < sources.size(); ++col) {
        const std::uint32_t N = sources[col];
        for (std::size_t si = 0; si < s_basis.size(); ++si) {
          const std::uint32_t S = s_basis[si];
          if ((S & N) != S) continue;
          const std::uint32_t T = N & ~S;
          const std::size_t ti = detail::wedge_index(d, T);
          // x_S /\ x_T = shuffle * x_N
          const auto sh = multiply(Monomial{S, 0}, Monomial{T, 0});
          for (const auto& [ai, uval] : U.column(si))
            for (const auto& [bi, wval] : W.column(ti)) {
              const auto prod = multiply(Monomial{a_basis[ai], 0}, Monomial{b_basis[bi], 0});
              if (!prod) continue;
              const std::size_t row = detail::wedge_index(d, prod->second.e_mask);
              target.add(row, col, Rational(uval * wval) * (sh->first * koszul * prod->first));
            }
        }
      }
    }
  out.normalize();
  return out;
}

/// Sign relating e_I f_J to the elementary map x_J |-> x_I; depends on |J| only.
inline int hom_identification_sign(int j_count) {
  return ((j_count * (j_count - 1)) / 2) % 2 ? -1 : 1;
}

/// H = /\V (x) /\V*  ->  Hom(/\V, /\V):  e_I f_J |-> sign * (x_J |-> x_I).
inline HomComplexElement to_hom(const Element& x, int d) {
  HomComplexElement out(d);
  for (const auto& [m, c] : x.terms()) {
    if (m.max_index() > d) throw InputError("to_hom: index beyond dimension");
    auto& comp = out.component(m.q(), m.p());
    comp.add(detail::wedge_index(d, m.e_mask), detail::wedge_index(d, m.f_mask),
             c * hom_identification_sign(m.q()));
  }
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------
// Transport through Hom_Tetra(Ind X, Coind Y) = Hom_k(X, Y)

struct TransportReport {
  int dimension = 0;
  int cap = 0;
  bool boundary_square_zero = true;    // d_{n-1} d_n = 0 on P
  bool coboundary_square_zero = true;  // d_{n+1} d_n = 0 on Q
  bool transported_zero = true;
  std::size_t maps_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return boundary_square_zero && coboundary_square_zero && transported_zero; }
};

/// For abelian g: builds the truncated resolutions, checks that they are
/// complexes, and verifies that every f : /\^p -> /\^q transports to the zero
/// differential. With F the tetramodule map attached to f, F(1 x_N 1) lies in
/// the coinvariants 1 (x) /\^q (x) 1 and eps(x)F(x)eps = f, so
///   D(f) = pi o d o iota o f   (component /\^p -> /\^{q+1})
///        + (eps f eps) o d_P o iota   (component /\^{p+1} -> /\^q).
inline TransportReport abelian_transport_check(int d, int cap, const InducedOptions& opt = {}) {
  TransportReport rep;
  rep.dimension = d;
  rep.cap = cap;
  const auto g = LieAlgebraData::abelian(d);

  std::map<int, RationalMatrix> dP, dQ;
  for (int n = 1; n <= std::min(d, cap); ++n) dP[n] = induced_differential(g, n, cap, opt);
  for (int n = 0; n <= std::min(d, cap); ++n) dQ[n] = coinduced_differential(g, n, cap);
  for (int n = 2; n <= std::min(d, cap); ++n)
    if (!(dP[n - 1] * dP[n]).is_zero()) {
      rep.boundary_square_zero = false;
      rep.failures.push_back("induced d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0");
    }
  for (int n = 0; n + 1 <= std::min(d, cap); ++n)
    if (!(dQ[n + 1] * dQ[n]).is_zero()) {
      rep.coboundary_square_zero = false;
      rep.failures.push_back("coinduced d_" + std::to_string(n + 1) + " d_" + std::to_string(n) + " != 0");
    }

  const Exponent one(static_cast<std::size_t>(d), 0);
  auto generators_of = [&](int n) {
    // indices in the truncated basis of 1 (x) x_N (x) 1
    ResolutionBasis basis(d, n, cap);
    std::vector<std::size_t> out;
    for (auto w : wedge_basis(d, n)) out.push_back(*basis.index_of({one, w, one}));
    return out;
  };

  for (int p = 0; p <= std::min(d, cap); ++p)
    for (int q = 0; q <= std::min(d, cap); ++q) {
      const auto src = wedge_basis(d, p), tgt = wedge_basis(d, q);
      for (std::size_t s = 0; s < src.size(); ++s)
        for (std::size_t t = 0; t < tgt.size(); ++t) {
          ++rep.maps_checked;
          // f = x_src[s] |-> x_tgt[t]
          if (q + 1 <= std::min(d, cap)) {
            const auto gens_q = generators_of(q);
            const auto gens_q1 = generators_of(q + 1);
            const SparseVector image = dQ[q].apply(SparseVector{{gens_q[t], Rational(1)}});
            for (std::size_t k = 0; k < gens_q1.size(); ++k)
              if (image.count(gens_q1[k])) {
                rep.transported_zero = false;
                rep.failures.push_back("d o F nonzero for map /\\^" + std::to_string(p) + " -> /\\^" +
                                       std::to_string(q));
              }
          }
          if (p + 1 <= std::min(d, cap)) {
            const auto gens_p1 = generators_of(p + 1);
            ResolutionBasis basis_p(d, p, cap);
            const auto target_gen = *basis_p.index_of({one, src[s], one});
            for (std::size_t k = 0; k < gens_p1.size(); ++k) {
              const Rational v = dP[p + 1].get(target_gen, gens_p1[k]);
              if (v != 0) {
                rep.transported_zero = false;
                rep.failures.push_back("F o d nonzero for map /\\^" + std::to_string(p) + " -> /\\^" +
                                       std::to_string(q));
              }
            }
          }
        }
    }
  return rep;
}

}  // namespace bigbracket
