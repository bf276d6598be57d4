#pragma once

// Gerstenhaber-Schack complex of a finite-dimensional bialgebra A:
// C^n = sum_{p+q=n, p,q>=1} Hom(A^{(x)p}, A^{(x)q}) with d = d1 + d2.
//
// Tensor powers use the basis of index tuples (i_1, ..., i_p) with i_1 most
// significant, so a cochain A^{(x)p} -> A^{(x)q} is an n^q x n^p matrix.

#include <bigbracket/error.hpp>
#include <bigbracket/linalg.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace bigbracket {

/// Kronecker product.
inline RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (const auto& [ra, ca, va] : a.entries())
    for (const auto& [rb, cb, vb] : b.entries())
      out.set(ra * b.rows() + rb, ca * b.cols() + cb, va * vb);
  return out;
}

inline std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

class FiniteBialgebra {
 public:
  /// mu: n x n^2 (column i*n+j holds b_i b_j), delta: n^2 x n (column i holds
  /// Delta(b_i)), unit: n-vector, counit: n-covector. All axioms are checked.
  FiniteBialgebra(std::string name, RationalMatrix mu, RationalMatrix delta, Vector unit, Vector counit)
      : name_(std::move(name)), mu_(std::move(mu)), delta_(std::move(delta)),
        unit_(std::move(unit)), counit_(std::move(counit)) {
    n_ = mu_.rows();
    if (n_ == 0) throw InputError("bialgebra of dimension 0");
    if (mu_.cols() != n_ * n_) throw InputError("mu must be n x n^2");
    if (delta_.rows() != n_ * n_ || delta_.cols() != n_) throw InputError("delta must be n^2 x n");
    if (unit_.size() != n_ || counit_.size() != n_) throw InputError("unit/counit must have n entries");
    if (auto bad = failed_axiom()) throw InputError("bialgebra axiom failed: " + *bad);
    build_tables();
  }

  static FiniteBialgebra trivial();
  static FiniteBialgebra group(int order);
  static FiniteBialgebra dual_group(int order);
  static FiniteBialgebra sweedler4();
  static std::optional<FiniteBialgebra> builtin(const std::string& name);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return n_; }
  const RationalMatrix& mu() const { return mu_; }
  const RationalMatrix& delta() const { return delta_; }
  const Vector& unit() const { return unit_; }
  const Vector& counit() const { return counit_; }

  /// b_i b_j
  const SparseVector& product(std::size_t i, std::size_t j) const { return products_[i * n_ + j]; }
  /// Delta(b_i) as (j, k, c) with sum c b_j (x) b_k
  const std::vector<std::tuple<std::size_t, std::size_t, Rational>>& coproduct(std::size_t i) const {
    return coproducts_[i];
  }

  /// Name of the first failing axiom, if any.
  std::optional<std::string> failed_axiom() const {
    const auto I = RationalMatrix::identity(n_);
    RationalMatrix u(n_, 1), e(1, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      u.set(i, 0, unit_[i]);
      e.set(0, i, counit_[i]);
    }
    RationalMatrix tau(n_ * n_, n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) tau.set(j * n_ + i, i * n_ + j, 1);
    const auto one11 = RationalMatrix::identity(1);
    if (!(mu_ * kron(mu_, I) == mu_ * kron(I, mu_))) return "associativity";
    if (!(kron(delta_, I) * delta_ == kron(I, delta_) * delta_)) return "coassociativity";
    if (!(mu_ * kron(u, I) == I) || !(mu_ * kron(I, u) == I)) return "unit";
    if (!(kron(e, I) * delta_ == I) || !(kron(I, e) * delta_ == I)) return "counit";
    if (!(delta_ * u == kron(u, u))) return "coproduct of the unit";
    if (!(e * u == one11)) return "counit of the unit";
    if (!(e * mu_ == kron(e, e))) return "counit multiplicativity";
    if (!(delta_ * mu_ == kron(mu_, mu_) * kron(kron(I, tau), I) * kron(delta_, delta_)))
      return "compatibility Delta(ab) = Delta(a)Delta(b)";
    return std::nullopt;
  }

 private:
  void build_tables() {
    products_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) products_[i * n_ + j] = mu_.column(i * n_ + j);
    coproducts_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (const auto& [r, c] : delta_.column(i)) coproducts_[i].emplace_back(r / n_, r % n_, c);
  }

  std::string name_;
  std::size_t n_ = 0;
  RationalMatrix mu_, delta_;
  Vector unit_, counit_;
  std::vector<SparseVector> products_;
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, Rational>>> coproducts_;
};

inline FiniteBialgebra FiniteBialgebra::trivial() {
  return FiniteBialgebra("trivial", RationalMatrix::identity(1), RationalMatrix::identity(1), {1}, {1});
}

/// Group algebra of Z/n: basis g^0..g^{n-1}, Delta(g) = g (x) g.
inline FiniteBialgebra FiniteBialgebra::group(int order) {
  const auto n = static_cast<std::size_t>(order);
  RationalMatrix mu(n, n * n), delta(n * n, n);
  Vector unit(n, Rational(0)), counit(n, Rational(1));
  unit[0] = 1;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) mu.set((a + b) % n, a * n + b, 1);
    delta.set(a * n + a, a, 1);
  }
  return FiniteBialgebra("group_z" + std::to_string(order), mu, delta, unit, counit);
}

/// Functions on Z/n: idempotents delta_a, Delta(delta_c) = sum_{a+b=c} delta_a (x) delta_b.
inline FiniteBialgebra FiniteBialgebra::dual_group(int order) {
  const auto n = static_cast<std::size_t>(order);
  RationalMatrix mu(n, n * n), delta(n * n, n);
  Vector unit(n, Rational(1)), counit(n, Rational(0));
  counit[0] = 1;
  for (std::size_t a = 0; a < n; ++a) {
    mu.set(a, a * n + a, 1);
    for (std::size_t b = 0; b < n; ++b) delta.set(a * n + b, (a + b) % n, 1);
  }
  return FiniteBialgebra("dual_group_z" + std::to_string(order), mu, delta, unit, counit);
}

/// Sweedler's 4-dimensional Hopf algebra: basis 1, g, x, gx with g^2 = 1,
/// x^2 = 0, xg = -gx, Delta(g) = g (x) g, Delta(x) = x (x) 1 + g (x) x.
inline FiniteBialgebra FiniteBialgebra::sweedler4() {
  // basis index = a + 2b for g^a x^b
  RationalMatrix mu(4, 16), delta(16, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) {
          if (b + e == 2) continue;
          // g^a x^b g^c x^e = (-1)^{bc} g^{a+c} x^{b+e}
          const int sign = (b * c) % 2 ? -1 : 1;
          const auto lhs = static_cast<std::size_t>((a + 2 * b) * 4 + (c + 2 * e));
          mu.set(static_cast<std::size_t>((a + c) % 2 + 2 * (b + e)), lhs, sign);
        }
  auto idx = [](int a, int b) { return static_cast<std::size_t>(a + 2 * b); };
  auto put = [&](std::size_t src, std::size_t l, std::size_t r, int c) { delta.add(l * 4 + r, src, c); };
  put(idx(0, 0), idx(0, 0), idx(0, 0), 1);                                      // 1
  put(idx(1, 0), idx(1, 0), idx(1, 0), 1);                                      // g
  put(idx(0, 1), idx(0, 1), idx(0, 0), 1);                                      // x
  put(idx(0, 1), idx(1, 0), idx(0, 1), 1);
  put(idx(1, 1), idx(1, 1), idx(1, 0), 1);                                      // gx
  put(idx(1, 1), idx(0, 0), idx(1, 1), 1);
  return FiniteBialgebra("sweedler4", mu, delta, {1, 0, 0, 0}, {1, 1, 0, 0});
}

inline std::optional<FiniteBialgebra> FiniteBialgebra::builtin(const std::string& name) {
  if (name == "trivial") return trivial();
  if (name == "group_z2") return group(2);
  if (name == "group_z3") return group(3);
  if (name == "dual_group_z2") return dual_group(2);
  if (name == "sweedler4") return sweedler4();
  return std::nullopt;
}

inline const std::vector<std::string>& builtin_bialgebra_names() {
  static const std::vector<std::string> names{"trivial", "group_z2", "group_z3", "sweedler4",
                                              "dual_group_z2"};
  return names;
}

/// A cochain A^{(x)p} -> A^{(x)q}.
struct GSCochain {
  int p = 1, q = 1;
  RationalMatrix phi;  // n^q x n^p

  static GSCochain zero(const FiniteBialgebra& A, int p, int q) {
    return {p, q, RationalMatrix(ipow(A.dim(), q), ipow(A.dim(), p))};
  }
  /// Basis cochain with a single 1 at flattened position row * n^p + col.
  static GSCochain elementary(const FiniteBialgebra& A, int p, int q, std::size_t flat) {
    GSCochain c = zero(A, p, q);
    c.phi.set(flat / c.phi.cols(), flat % c.phi.cols(), 1);
    return c;
  }
};

/// Sign choices for d2. The middle terms carry (-1)^{i + middle_offset}, the
/// last term carries `last`, and the whole of d2 is multiplied by (-1)^{p+1}
/// when `twist` is set (this makes d1 and d2 anticommute instead of commute).
struct GSSignConvention {
  enum class Last { PMinusOne, QPlusOne, Q };
  int middle_offset = 0;
  Last last = Last::QPlusOne;
  bool twist = true;

  friend bool operator==(const GSSignConvention&, const GSSignConvention&) = default;

  std::string describe() const {
    std::string s = "middle (-1)^{i";
    s += middle_offset ? "+1}" : "}";
    s += ", last ";
    s += last == Last::PMinusOne ? "(-1)^{p-1}" : last == Last::QPlusOne ? "(-1)^{q+1}" : "(-1)^q";
    s += twist ? ", d2 scaled by (-1)^{p+1}" : ", no twist";
    return s;
  }
};

/// The repository convention (see tests/test_gs_complex.cpp for the search that fixes it).
inline constexpr GSSignConvention kGSConvention{};

namespace detail {

inline std::vector<std::size_t> decode(std::size_t index, std::size_t n, int len) {
  std::vector<std::size_t> t(static_cast<std::size_t>(len));
  for (int k = len - 1; k >= 0; --k) {
    t[static_cast<std::size_t>(k)] = index % n;
    index /= n;
  }
  return t;
}

inline std::size_t encode(const std::vector<std::size_t>& t, std::size_t n) {
  std::size_t index = 0;
  for (auto v : t) index = index * n + v;
  return index;
}

// Tensor of two sparse vectors: index = left * right_size + right.
inline SparseVector tensor(const SparseVector& l, const SparseVector& r, std::size_t right_size) {
  SparseVector out;
  for (const auto& [i, a] : l)
    for (const auto& [j, b] : r) add_to(out, i * right_size + j, a * b);
  return out;
}

class TensorOps {
 public:
  explicit TensorOps(const FiniteBialgebra& A) : A_(A) {}

  /// Componentwise product in the algebra A^{(x)q}.
  SparseVector multiply(const SparseVector& u, const SparseVector& v, int q) const {
    const std::size_t n = A_.dim();
    SparseVector out;
    for (const auto& [s, cu] : u)
      for (const auto& [t, cv] : v) {
        const auto ss = decode(s, n, q), tt = decode(t, n, q);
        SparseVector acc{{0, Rational(cu * cv)}};
        for (int k = 0; k < q; ++k)
          acc = tensor(acc, A_.product(ss[static_cast<std::size_t>(k)], tt[static_cast<std::size_t>(k)]), n);
        for (const auto& [i, c] : acc) add_to(out, i, c);
      }
    return out;
  }

  /// Iterated product mu_{p-1} of a basis tuple.
  SparseVector product_of(const std::vector<std::size_t>& t) const {
    SparseVector acc{{t.front(), Rational(1)}};
    for (std::size_t k = 1; k < t.size(); ++k) {
      SparseVector next;
      for (const auto& [i, c] : acc)
        for (const auto& [j, v] : A_.product(i, t[k])) add_to(next, j, c * v);
      acc = std::move(next);
    }
    return acc;
  }

  /// Delta^{q-1}(b_i) in A^{(x)q}.
  SparseVector iterated_coproduct(std::size_t i, int q) const {
    SparseVector acc{{i, Rational(1)}};
    for (int len = 1; len < q; ++len) {
      // apply Delta to the last factor
      SparseVector next;
      for (const auto& [idx, c] : acc) {
        const std::size_t head = idx / A_.dim(), last = idx % A_.dim();
        for (const auto& [l, r, v] : A_.coproduct(last))
          add_to(next, (head * A_.dim() + l) * A_.dim() + r, c * v);
      }
      acc = std::move(next);
    }
    return acc;
  }

  /// Delta^{(x)p}(a_1 (x) ... (x) a_p) as (coefficient, first legs, second legs).
  std::vector<std::tuple<Rational, std::vector<std::size_t>, std::vector<std::size_t>>>
  tensor_coproduct(const std::vector<std::size_t>& a) const {
    std::vector<std::tuple<Rational, std::vector<std::size_t>, std::vector<std::size_t>>> out{
        {Rational(1), {}, {}}};
    for (auto ai : a) {
      std::vector<std::tuple<Rational, std::vector<std::size_t>, std::vector<std::size_t>>> next;
      for (const auto& [c, l, r] : out)
        for (const auto& [x, y, v] : A_.coproduct(ai)) {
          auto l2 = l, r2 = r;
          l2.push_back(x);
          r2.push_back(y);
          next.emplace_back(c * v, std::move(l2), std::move(r2));
        }
      out = std::move(next);
    }
    return out;
  }

 private:
  const FiniteBialgebra& A_;
};

}  // namespace detail

/// Hochschild-type differential (p, q) -> (p+1, q):
///   d1 phi(a_0..a_p) = Delta^{q-1}(a_0) phi(a_1..a_p)
///                    + sum_{i=0}^{p-1} (-1)^{i+1} phi(..., a_i a_{i+1}, ...)
///                    + (-1)^{p+1} phi(a_0..a_{p-1}) Delta^{q-1}(a_p)
inline GSCochain gs_d1(const GSCochain& c, const FiniteBialgebra& A) {
  const std::size_t n = A.dim();
  const int p = c.p, q = c.q;
  const detail::TensorOps ops(A);
  GSCochain out = GSCochain::zero(A, p + 1, q);
  std::vector<SparseVector> cols(c.phi.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = c.phi.column(k);
  if (c.phi.is_zero()) return out;
  std::vector<SparseVector> coproducts(n);
  for (std::size_t i = 0; i < n; ++i) coproducts[i] = ops.iterated_coproduct(i, q);

  for (std::size_t col = 0; col < out.phi.cols(); ++col) {
    const auto a = detail::decode(col, n, p + 1);
    SparseVector value;
    auto add_scaled = [&value](const SparseVector& v, const Rational& s) {
      for (const auto& [i, x] : v) add_to(value, i, s * x);
    };
    {
      std::vector<std::size_t> rest(a.begin() + 1, a.end());
      const auto& image = cols[detail::encode(rest, n)];
      if (!image.empty()) add_scaled(ops.multiply(coproducts[a.front()], image, q), 1);
    }
    for (int i = 0; i < p; ++i) {
      const Rational sign = (i + 1) % 2 ? -1 : 1;
      const auto ui = static_cast<std::size_t>(i);
      for (const auto& [b, v] : A.product(a[ui], a[ui + 1])) {
        std::vector<std::size_t> merged(a.begin(), a.begin() + i);
        merged.push_back(b);
        merged.insert(merged.end(), a.begin() + i + 2, a.end());
        add_scaled(cols[detail::encode(merged, n)], sign * v);
      }
    }
    {
      std::vector<std::size_t> rest(a.begin(), a.end() - 1);
      const auto& image = cols[detail::encode(rest, n)];
      const Rational sign = (p + 1) % 2 ? -1 : 1;
      if (!image.empty()) add_scaled(ops.multiply(image, coproducts[a.back()], q), sign);
    }
    for (const auto& [r, v] : value) out.phi.set(r, col, v);
  }
  return out;
}

/// coHochschild-type differential (p, q) -> (p, q+1):
///   d2 phi = (mu_{p-1} (x) phi) Delta^{(x)p} + sum_{i=1}^q s_i Delta_i phi + s_last (phi (x) mu_{p-1}) Delta^{(x)p}
/// with the signs of `conv`.
inline GSCochain gs_d2(const GSCochain& c, const FiniteBialgebra& A,
                       const GSSignConvention& conv = kGSConvention) {
  const std::size_t n = A.dim();
  const int p = c.p, q = c.q;
  const detail::TensorOps ops(A);
  GSCochain out = GSCochain::zero(A, p, q + 1);
  if (c.phi.is_zero()) return out;
  std::vector<SparseVector> cols(c.phi.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = c.phi.column(k);
  const std::size_t nq = ipow(n, q);
  const Rational twist = conv.twist && (p + 1) % 2 ? -1 : 1;
  Rational last_sign = 1;
  switch (conv.last) {
    case GSSignConvention::Last::PMinusOne: last_sign = (p - 1) % 2 ? -1 : 1; break;
    case GSSignConvention::Last::QPlusOne: last_sign = (q + 1) % 2 ? -1 : 1; break;
    case GSSignConvention::Last::Q: last_sign = q % 2 ? -1 : 1; break;
  }

  for (std::size_t col = 0; col < c.phi.cols(); ++col) {
    const auto a = detail::decode(col, n, p);
    SparseVector value;
    for (const auto& [coef, left, right] : ops.tensor_coproduct(a)) {
      const auto& phi_right = cols[detail::encode(right, n)];
      if (!phi_right.empty())
        for (const auto& [i, v] : detail::tensor(ops.product_of(left), phi_right, nq))
          add_to(value, i, coef * v);
      const auto& phi_left = cols[detail::encode(left, n)];
      if (!phi_left.empty())
        for (const auto& [i, v] : detail::tensor(phi_left, ops.product_of(right), n))
          add_to(value, i, last_sign * coef * v);
    }
    for (const auto& [y, v] : cols[col]) {
      const auto t = detail::decode(y, n, q);
      for (int i = 1; i <= q; ++i) {
        const Rational sign = (i + conv.middle_offset) % 2 ? -1 : 1;
        const auto slot = static_cast<std::size_t>(i - 1);
        for (const auto& [l, r, cv] : A.coproduct(t[slot])) {
          std::vector<std::size_t> split(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(slot));
          split.push_back(l);
          split.push_back(r);
          split.insert(split.end(), t.begin() + static_cast<std::ptrdiff_t>(slot) + 1, t.end());
          add_to(value, detail::encode(split, n), sign * v * cv);
        }
      }
    }
    for (const auto& [r, v] : value) out.phi.set(r, col, twist * v);
  }
  return out;
}

inline std::pair<GSCochain, GSCochain> gs_differential(const GSCochain& c, const FiniteBialgebra& A) {
  return {gs_d1(c, A), gs_d2(c, A)};
}

/// Matrix of a cochain-level operator on Hom(p, q), flattened as row * n^p + col.
inline RationalMatrix gs_operator_matrix(const FiniteBialgebra& A, int p, int q,
                                         const std::function<GSCochain(const GSCochain&)>& op) {
  const std::size_t dim_src = ipow(A.dim(), p + q);
  RationalMatrix m;
  for (std::size_t k = 0; k < dim_src; ++k) {
    const GSCochain image = op(GSCochain::elementary(A, p, q, k));
    if (k == 0) m = RationalMatrix(image.phi.rows() * image.phi.cols(), dim_src);
    for (const auto& [r, c, v] : image.phi.entries()) m.set(r * image.phi.cols() + c, k, v);
  }
  return m;
}

inline RationalMatrix gs_d1_matrix(const FiniteBialgebra& A, int p, int q) {
  return gs_operator_matrix(A, p, q, [&A](const GSCochain& c) { return gs_d1(c, A); });
}
inline RationalMatrix gs_d2_matrix(const FiniteBialgebra& A, int p, int q,
                                   const GSSignConvention& conv = kGSConvention) {
  return gs_operator_matrix(A, p, q, [&A, conv](const GSCochain& c) { return gs_d2(c, A, conv); });
}

struct GSSquareCheck {
  int p, q;
  bool d1d1_zero, d2d2_zero, anticommute;
  bool ok() const { return d1d1_zero && d2d2_zero && anticommute; }
};

/// d1^2, d2^2 and d1 d2 + d2 d1 on every source block (p, q), p, q >= 1, p + q <= max_total.
inline std::vector<GSSquareCheck> gs_square_checks(const FiniteBialgebra& A, int max_total,
                                                   const GSSignConvention& conv = kGSConvention) {
  std::vector<GSSquareCheck> out;
  for (int total = 2; total <= max_total; ++total)
    for (int p = 1; p < total; ++p) {
      const int q = total - p;
      const auto d1 = gs_d1_matrix(A, p, q);
      const auto d2 = gs_d2_matrix(A, p, q, conv);
      const auto d1_next = gs_d1_matrix(A, p + 1, q);
      const auto d2_next = gs_d2_matrix(A, p, q + 1, conv);
      const auto d2_after_d1 = gs_d2_matrix(A, p + 1, q, conv);
      const auto d1_after_d2 = gs_d1_matrix(A, p, q + 1);
      out.push_back({p, q, (d1_next * d1).is_zero(), (d2_next * d2).is_zero(),
                     (d2_after_d1 * d1 + d1_after_d2 * d2).is_zero()});
    }
  return out;
}

/// Total complex in degrees 0..max_total (degrees 0 and 1 are zero spaces).
struct GSTotalComplex {
  ChainComplexRep complex;
  std::map<int, std::vector<std::pair<int, int>>> blocks;  // degree -> (p, q) in block order
};

inline GSTotalComplex gs_total_complex(const FiniteBialgebra& A, int max_total,
                                       const GSSignConvention& conv = kGSConvention) {
  const std::size_t n = A.dim();
  std::map<int, std::vector<std::pair<int, int>>> blocks;
  std::vector<std::size_t> dims;
  std::map<std::pair<int, int>, std::size_t> offset;
  for (int deg = 0; deg <= max_total; ++deg) {
    std::size_t dim = 0;
    for (int p = 1; p < deg; ++p) {
      blocks[deg].push_back({p, deg - p});
      offset[{p, deg - p}] = dim;
      dim += ipow(n, deg);
    }
    dims.push_back(dim);
  }
  std::vector<RationalMatrix> maps;
  for (int deg = 0; deg < max_total; ++deg) {
    RationalMatrix D(dims[static_cast<std::size_t>(deg + 1)], dims[static_cast<std::size_t>(deg)]);
    for (const auto& [p, q] : blocks[deg]) {
      const std::size_t src = offset[{p, q}];
      for (const auto& [r, c, v] : gs_d1_matrix(A, p, q).entries()) D.add(offset[{p + 1, q}] + r, src + c, v);
      for (const auto& [r, c, v] : gs_d2_matrix(A, p, q, conv).entries())
        D.add(offset[{p, q + 1}] + r, src + c, v);
    }
    maps.push_back(std::move(D));
  }
  return {ChainComplexRep(0, std::move(dims), std::move(maps)), std::move(blocks)};
}

/// dim H^n_GS for n <= max_total - 1, truncating the complex at degree max_total.
inline std::map<int, std::size_t> gs_cohomology(const FiniteBialgebra& A, int max_total,
                                                const GSSignConvention& conv = kGSConvention) {
  if (max_total < 1) throw InputError("gs_cohomology: max_total must be >= 1");
  auto total = gs_total_complex(A, max_total, conv);
  const auto& C = total.complex;
  if (auto bad = C.square_zero_failure()) {
    // locate the first source block whose columns survive d^2
    const auto sq = *C.differential(*bad + 1) * *C.differential(*bad);
    std::size_t first_col = sq.transpose().rows();
    for (std::size_t r = 0; r < sq.rows(); ++r)
      for (const auto& [c, v] : sq.row(r)) first_col = std::min(first_col, c);
    std::size_t block_start = 0;
    std::string where;
    for (const auto& [p, q] : total.blocks[*bad]) {
      const std::size_t size = ipow(A.dim(), p + q);
      if (first_col < block_start + size) {
        where = "block (p,q) = (" + std::to_string(p) + "," + std::to_string(q) + ")";
        break;
      }
      block_start += size;
    }
    throw SquareZeroError(*bad, where);
  }
  auto dims = cohomology_dims(C);
  dims.erase(max_total);
  return dims;
}

}  // namespace bigbracket
