#pragma once

// The graded-commutative algebra H = S(W), W = (V + V*)[-1], with dim V = d.
//
// H is the exterior algebra on the odd generators e_1..e_d (basis of V) and
// f_1..f_d (dual basis of V*), all of degree +1. A basis monomial is a pair of
// subsets (I, J) and stands for e_I f_J in normal order: every e before every
// f, indices ascending. All signs in the library are relative to that order.

#include <bigbracket/error.hpp>
#include <bigbracket/rational.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bigbracket {

inline constexpr int kDefaultMaxDimension = 6;
inline constexpr int kHardMaxDimension = 16;

/// dim V. Checked against a configurable cap (default 6).
class Dimension {
 public:
  explicit Dimension(int d, int max_dimension = kDefaultMaxDimension) : d_(d) {
    if (max_dimension > kHardMaxDimension) max_dimension = kHardMaxDimension;
    if (d < 1 || d > max_dimension)
      throw InputError("dimension " + std::to_string(d) + " outside [1, " +
                       std::to_string(max_dimension) + "]");
  }
  int value() const { return d_; }
  operator int() const { return d_; }

 private:
  int d_;
};

/// An odd generator: e_i (a vector of V) or f_i (a covector), 1-based index.
struct Generator {
  enum class Kind : std::uint8_t { E, F };
  Kind kind;
  int index;

  static Generator e(int i) { return {Kind::E, i}; }
  static Generator f(int i) { return {Kind::F, i}; }

  friend auto operator<=>(const Generator&, const Generator&) = default;
  friend bool operator==(const Generator&, const Generator&) = default;

  std::string name() const {
    return (kind == Kind::E ? "e" : "f") + std::to_string(index);
  }
};

namespace detail {

inline std::uint32_t bit(int index) { return std::uint32_t{1} << (index - 1); }

// Number of pairs (a, b), a in A, b in B, with a > b.
inline int inversions(std::uint32_t a, std::uint32_t b) {
  int count = 0;
  while (b) {
    int low = std::countr_zero(b);
    b &= b - 1;
    std::uint32_t above = low >= 31 ? 0u : ~((std::uint32_t{2} << low) - 1);
    count += std::popcount(a & above);
  }
  return count;
}

// Lexicographic comparison of two subsets read as ascending index lists.
inline bool subset_less(std::uint32_t a, std::uint32_t b) {
  while (a && b) {
    int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

inline std::vector<int> indices(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

}  // namespace detail

/// Basis monomial e_I f_J, stored as two bitmasks (bit k-1 <-> index k).
struct Monomial {
  std::uint32_t e_mask = 0;
  std::uint32_t f_mask = 0;

  static Monomial unit() { return {}; }
  static Monomial from_generator(Generator g) {
    return g.kind == Generator::Kind::E ? Monomial{detail::bit(g.index), 0}
                                        : Monomial{0, detail::bit(g.index)};
  }
  static Monomial from_indices(const std::vector<int>& I, const std::vector<int>& J) {
    Monomial m;
    auto fill = [](const std::vector<int>& idx, std::uint32_t& mask, const char* what) {
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] < 1 || idx[k] > kHardMaxDimension)
          throw InputError(std::string("index out of range in ") + what);
        if (k > 0 && idx[k] <= idx[k - 1])
          throw InputError(std::string("indices not strictly increasing in ") + what);
        mask |= detail::bit(idx[k]);
      }
    };
    fill(I, m.e_mask, "I");
    fill(J, m.f_mask, "J");
    return m;
  }

  int p() const { return std::popcount(e_mask); }
  int q() const { return std::popcount(f_mask); }
  int degree() const { return p() + q(); }
  std::pair<int, int> bidegree() const { return {p(), q()}; }
  bool is_unit() const { return e_mask == 0 && f_mask == 0; }
  /// Largest index used (0 for the unit).
  int max_index() const {
    std::uint32_t all = e_mask | f_mask;
    return all ? 32 - std::countl_zero(all) : 0;
  }

  std::vector<int> I() const { return detail::indices(e_mask); }
  std::vector<int> J() const { return detail::indices(f_mask); }

  /// Generators in normal order.
  std::vector<Generator> generators() const {
    std::vector<Generator> out;
    for (int i : I()) out.push_back(Generator::e(i));
    for (int j : J()) out.push_back(Generator::f(j));
    return out;
  }

  std::string name() const {
    if (is_unit()) return "1";
    std::string s;
    for (const auto& g : generators()) s += g.name();
    return s;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Lexicographic on (I, J) read as ascending index lists.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.e_mask != b.e_mask) return detail::subset_less(a.e_mask, b.e_mask);
    return detail::subset_less(a.f_mask, b.f_mask);
  }
};

/// Product of two monomials: zero (nullopt) on a repeated generator, otherwise
/// the merged monomial with the sign of sorting the concatenation.
inline std::optional<std::pair<int, Monomial>> multiply(const Monomial& a, const Monomial& b) {
  if ((a.e_mask & b.e_mask) || (a.f_mask & b.f_mask)) return std::nullopt;
  int swaps = detail::inversions(a.e_mask, b.e_mask) + a.q() * b.p() +
              detail::inversions(a.f_mask, b.f_mask);
  return std::pair{swaps % 2 ? -1 : 1, Monomial{a.e_mask | b.e_mask, a.f_mask | b.f_mask}};
}

/// Sign of the permutation taking src to dst. All generators are odd, so this
/// is the Koszul sign of the reordering.
inline int koszul_sign(const std::vector<Generator>& src, const std::vector<Generator>& dst) {
  if (src.size() != dst.size()) throw InputError("koszul_sign: sequences differ in length");
  std::vector<Generator> sorted = src;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("koszul_sign: repeated generator");
  std::vector<std::size_t> pos(dst.size());
  std::vector<bool> used(src.size(), false);
  for (std::size_t k = 0; k < dst.size(); ++k) {
    auto it = std::find(src.begin(), src.end(), dst[k]);
    if (it == src.end() || used[static_cast<std::size_t>(it - src.begin())])
      throw InputError("koszul_sign: dst is not a permutation of src");
    pos[k] = static_cast<std::size_t>(it - src.begin());
    used[pos[k]] = true;
  }
  int swaps = 0;
  for (std::size_t a = 0; a < pos.size(); ++a)
    for (std::size_t b = a + 1; b < pos.size(); ++b)
      if (pos[a] > pos[b]) ++swaps;
  return swaps % 2 ? -1 : 1;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// dim H^n = sum_{p+q=n} C(d,p) C(d,q).
inline std::uint64_t dim_by_degree(int d, int n) {
  std::uint64_t total = 0;
  for (int p = 0; p <= n; ++p) total += binomial(d, p) * binomial(d, n - p);
  return total;
}

/// All monomials of degree n in lexicographic order; empty when n is out of range.
inline std::vector<Monomial> enumerate_basis(const Dimension& dim, int n) {
  const int d = dim.value();
  std::vector<Monomial> out;
  if (n < 0 || n > 2 * d) return out;
  const std::uint32_t full = (std::uint32_t{1} << d) - 1;
  for (std::uint32_t e = 0; e <= full; ++e) {
    int p = std::popcount(e);
    if (p > n) continue;
    for (std::uint32_t f = 0; f <= full; ++f)
      if (p + std::popcount(f) == n) out.push_back({e, f});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A degree-n basis with reverse lookup, used to turn linear maps into matrices.
class DegreeBasis {
 public:
  DegreeBasis(const Dimension& d, int n) : monomials_(enumerate_basis(d, n)) {
    for (std::size_t k = 0; k < monomials_.size(); ++k) index_[monomials_[k]] = k;
  }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t k) const { return monomials_[k]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::optional<std::size_t> index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> index_;
};

/// Finite Q-linear combination of monomials; zero coefficients are never stored.
class Element {
 public:
  using Terms = std::map<Monomial, Rational>;

  Element() = default;
  Element(const Monomial& m, const Rational& c = 1) { add(m, c); }
  static Element scalar(const Rational& c) { return Element(Monomial::unit(), c); }
  static Element generator(Generator g) { return Element(Monomial::from_generator(g)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// The common degree of all terms; nullopt for zero. Throws on mixed degrees.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [m, c] : terms_) {
      if (deg && *deg != m.degree()) throw MathError("element is not homogeneous");
      deg = m.degree();
    }
    return deg;
  }

  bool is_homogeneous_of_degree(int n) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [n](const auto& t) { return t.first.degree() == n; });
  }

  /// Part of bidegree (p, q).
  Element component(int p, int q) const {
    Element out;
    for (const auto& [m, c] : terms_)
      if (m.p() == p && m.q() == q) out.terms_.emplace(m, c);
    return out;
  }

  Element& operator+=(const Element& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  Element& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }
  friend bool operator==(const Element&, const Element&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + bigbracket::to_string(c) + ")" + m.name();
    }
    return s;
  }

 private:
  Terms terms_;
};

/// Graded-commutative product in S(W).
inline Element multiply(const Element& a, const Element& b) {
  Element out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (auto prod = multiply(ma, mb)) out.add(prod->second, prod->first * ca * cb);
  return out;
}

inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

}  // namespace bigbracket
