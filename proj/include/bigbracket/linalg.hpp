#pragma once

// Exact sparse linear algebra over Q.
//
// Elimination is fraction-free: rows are scaled to primitive integer vectors
// and combined as  r <- lead(p) * r - lead(r) * p  followed by content removal.
// Pivoting is deterministic (smallest leading column, then smallest original
// row index), so kernel bases and solutions are reproducible bit for bit.

#include <bigbracket/error.hpp>
#include <bigbracket/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace bigbracket {

using Vector = std::vector<Rational>;
using SparseVector = std::map<std::size_t, Rational>;

inline void add_to(SparseVector& v, std::size_t i, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = v.try_emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

class RationalMatrix {
 public:
  using Row = std::map<std::size_t, Rational>;

  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }
  static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows) {
    RationalMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw InputError("ragged dense matrix");
      for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c]);
    }
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  Rational get(std::size_t r, std::size_t c) const {
    check(r, c);
    auto it = rows_[r].find(c);
    return it == rows_[r].end() ? Rational(0) : it->second;
  }
  void set(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    if (v == 0) {
      rows_[r].erase(c);
    } else {
      rows_[r][c] = v;
    }
  }
  void add(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    add_to(rows_[r], c, v);
  }

  const Row& row(std::size_t r) const { return rows_[r]; }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }
  bool is_zero() const { return nonzeros() == 0; }

  /// Column c as a sparse vector.
  SparseVector column(std::size_t c) const {
    SparseVector out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto it = rows_[r].find(c);
      if (it != rows_[r].end()) out.emplace(r, it->second);
    }
    return out;
  }

  /// Row-major list of (row, col, value).
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries() const {
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> out;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) out.emplace_back(r, c, v);
    return out;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace(r, v);
    return t;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw InputError("apply: dimension mismatch");
    Vector y(rows_.size(), Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
    return y;
  }

  SparseVector apply(const SparseVector& x) const {
    SparseVector y;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rational acc = 0;
      for (const auto& [c, v] : rows_[r]) {
        auto it = x.find(c);
        if (it != x.end()) acc += v * it->second;
      }
      add_to(y, r, acc);
    }
    return y;
  }

  RationalMatrix& operator+=(const RationalMatrix& o) {
    same_shape(o);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : o.rows_[r]) add_to(rows_[r], c, v);
    return *this;
  }
  RationalMatrix& operator-=(const RationalMatrix& o) {
    same_shape(o);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : o.rows_[r]) add_to(rows_[r], c, -v);
    return *this;
  }
  RationalMatrix& operator*=(const Rational& s) {
    for (auto& row : rows_) {
      if (s == 0) {
        row.clear();
      } else {
        for (auto& [c, v] : row) v *= s;
      }
    }
    return *this;
  }
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows()) throw InputError("matrix product: dimension mismatch");
    RationalMatrix out(a.rows(), b.cols_);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (const auto& [k, av] : a.rows_[r])
        for (const auto& [c, bv] : b.rows_[k]) add_to(out.rows_[r], c, av * bv);
    return out;
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_.size() || c >= cols_)
      throw InputError("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                       ") out of range");
  }
  void same_shape(const RationalMatrix& o) const {
    if (o.rows() != rows() || o.cols_ != cols_) throw InputError("matrix shapes differ");
  }

  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

inline void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (g > 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

inline IntRow to_int_row(const RationalMatrix::Row& row) {
  Integer l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) out.emplace_back(c, Integer(v.get_num() * (l / v.get_den())));
  make_primitive(out);
  return out;
}

// r <- a * r - b * p  (both sorted by column).
inline IntRow combine(const IntRow& r, const Integer& a, const IntRow& p, const Integer& b) {
  IntRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.emplace_back(r[i].first, Integer(a * r[i].second));
      ++i;
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, Integer(-b * p[j].second));
      ++j;
    } else {
      Integer v = a * r[i].second - b * p[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

struct Echelon {
  std::vector<IntRow> rows;            // pivot rows, pivot columns ascending
  std::vector<std::size_t> pivot_cols;
};

inline Echelon echelon(std::vector<IntRow> work) {
  Echelon e;
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < work.size(); ++i)
    if (!work[i].empty()) alive.push_back(i);
  while (!alive.empty()) {
    std::size_t best = alive.front();
    for (std::size_t i : alive)
      if (work[i].front().first < work[best].front().first) best = i;
    const std::size_t col = work[best].front().first;
    IntRow pivot = std::move(work[best]);
    const Integer lead = pivot.front().second;
    std::vector<std::size_t> next;
    for (std::size_t i : alive) {
      if (i == best) continue;
      if (work[i].front().first == col) {
        Integer g = gcd(lead, work[i].front().second);
        work[i] = combine(work[i], Integer(lead / g), pivot, Integer(work[i].front().second / g));
      }
      if (!work[i].empty()) next.push_back(i);
    }
    alive = std::move(next);
    e.pivot_cols.push_back(col);
    e.rows.push_back(std::move(pivot));
  }
  return e;
}

inline Echelon echelon(const RationalMatrix& m) {
  std::vector<IntRow> work;
  work.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) work.push_back(to_int_row(m.row(r)));
  return echelon(std::move(work));
}

// Back-substitution: solves the echelon system with the given right-hand side
// column (values per pivot row) and fixed values for free columns.
inline Vector back_substitute(const Echelon& e, std::size_t cols, Vector x,
                              const std::vector<Rational>& rhs) {
  for (std::size_t k = e.rows.size(); k-- > 0;) {
    const IntRow& row = e.rows[k];
    Rational acc = rhs[k];
    for (std::size_t t = 1; t < row.size(); ++t)
      if (row[t].first < cols) acc -= Rational(row[t].second) * x[row[t].first];
    x[e.pivot_cols[k]] = acc / Rational(row.front().second);
  }
  return x;
}

}  // namespace detail

inline std::size_t rank(const RationalMatrix& m) { return detail::echelon(m).rows.size(); }

/// Null-space basis: one vector per free column, with 1 in that column and 0 in
/// the other free columns.
inline std::vector<Vector> kernel_basis(const RationalMatrix& m) {
  const auto e = detail::echelon(m);
  std::vector<bool> pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) pivot[c] = true;
  std::vector<Vector> basis;
  const std::vector<Rational> zero_rhs(e.rows.size(), Rational(0));
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (pivot[f]) continue;
    Vector x(m.cols(), Rational(0));
    x[f] = 1;
    basis.push_back(detail::back_substitute(e, m.cols(), std::move(x), zero_rhs));
  }
  return basis;
}

/// Some x with M x = b, or nullopt when b is not in the image.
inline std::optional<Vector> solve(const RationalMatrix& m, const Vector& b) {
  if (b.size() != m.rows())
    throw InputError("solve: right-hand side has " + std::to_string(b.size()) +
                     " entries, matrix has " + std::to_string(m.rows()) + " rows");
  const std::size_t n = m.cols();
  std::vector<detail::IntRow> work;
  work.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    RationalMatrix::Row row = m.row(r);
    if (b[r] != 0) row.emplace(n, b[r]);
    work.push_back(detail::to_int_row(row));
  }
  const auto e = detail::echelon(std::move(work));
  std::vector<Rational> rhs;
  rhs.reserve(e.rows.size());
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    if (e.pivot_cols[k] == n) return std::nullopt;
    const auto& row = e.rows[k];
    rhs.emplace_back(row.back().first == n ? Rational(row.back().second) : Rational(0));
  }
  return detail::back_substitute(e, n, Vector(n, Rational(0)), rhs);
}

/// Raised by cohomology_dims when d_{n+1} d_n != 0.
class SquareZeroError : public MathError {
 public:
  SquareZeroError(int degree, std::string detail)
      : MathError("d^2 != 0: d_" + std::to_string(degree + 1) + " * d_" + std::to_string(degree) +
                  " is nonzero" + (detail.empty() ? "" : " (" + detail + ")")),
        degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// Cochain complex C^lo -> ... -> C^hi with d_n : C^n -> C^{n+1}.
/// The differential out of C^hi is zero.
class ChainComplexRep {
 public:
  ChainComplexRep(int lo, std::vector<std::size_t> dims, std::vector<RationalMatrix> d)
      : lo_(lo), dims_(std::move(dims)), d_(std::move(d)) {
    if (dims_.empty()) throw InputError("complex with no degrees");
    if (d_.size() + 1 != dims_.size())
      throw InputError("complex needs exactly one differential between consecutive degrees");
    for (std::size_t k = 0; k < d_.size(); ++k)
      if (d_[k].cols() != dims_[k] || d_[k].rows() != dims_[k + 1])
        throw InputError("differential d_" + std::to_string(lo_ + static_cast<int>(k)) +
                         " has the wrong shape");
  }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int n) const {
    return n < lo() || n > hi() ? 0 : dims_[static_cast<std::size_t>(n - lo_)];
  }
  /// d_n; nullptr for n = hi (zero map) or out of range.
  const RationalMatrix* differential(int n) const {
    if (n < lo() || n >= hi()) return nullptr;
    return &d_[static_cast<std::size_t>(n - lo_)];
  }

  /// First degree n with d_{n+1} d_n != 0, if any.
  std::optional<int> square_zero_failure() const {
    for (std::size_t k = 0; k + 1 < d_.size(); ++k)
      if (!(d_[k + 1] * d_[k]).is_zero()) return lo_ + static_cast<int>(k);
    return std::nullopt;
  }

 private:
  int lo_;
  std::vector<std::size_t> dims_;
  std::vector<RationalMatrix> d_;
};

/// dim H^n = dim ker d_n - rank d_{n-1} for every degree of the complex.
inline std::map<int, std::size_t> cohomology_dims(const ChainComplexRep& c) {
  if (auto bad = c.square_zero_failure()) throw SquareZeroError(*bad, "");
  std::map<int, std::size_t> ranks;
  for (int n = c.lo(); n < c.hi(); ++n) ranks[n] = rank(*c.differential(n));
  std::map<int, std::size_t> out;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    std::size_t r_out = ranks.count(n) ? ranks[n] : 0;
    std::size_t r_in = ranks.count(n - 1) ? ranks[n - 1] : 0;
    out[n] = c.dim(n) - r_out - r_in;
  }
  return out;
}

}  // namespace bigbracket
