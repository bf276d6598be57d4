#pragma once

// Finite-dimensional Lie algebras given by structure constants
// [x_i, x_j] = sum_k c^k_ij x_k, and the tensor lambda in V (x) /\^2 V* that
// encodes them inside H.

#include <bigbracket/bracket.hpp>
#include <bigbracket/error.hpp>
#include <bigbracket/graded.hpp>

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace bigbracket {

/// One structure constant c^k_ij with i < j (1-based).
struct StructureConstant {
  int i, j, k;
  Rational value;
};

class LieAlgebraData {
 public:
  /// Validated construction: i < j, indices in range, Jacobi identity exact.
  LieAlgebraData(int d, const std::vector<StructureConstant>& constants)
      : LieAlgebraData(unchecked(d, constants)) {
    if (auto bad = jacobi_failure())
      throw InputError("Jacobi identity fails on (x" + std::to_string((*bad)[0] + 1) + ", x" +
                       std::to_string((*bad)[1] + 1) + ", x" + std::to_string((*bad)[2] + 1) + ")");
  }

  /// Builds the data without the Jacobi check (used to exercise corrupted constants).
  static LieAlgebraData unchecked(int d, const std::vector<StructureConstant>& constants) {
    LieAlgebraData g;
    g.d_ = Dimension(d).value();
    g.c_.assign(static_cast<std::size_t>(d * d * d), Rational(0));
    for (const auto& sc : constants) {
      if (sc.i < 1 || sc.j < 1 || sc.k < 1 || sc.i > d || sc.j > d || sc.k > d)
        throw InputError("structure constant index out of range");
      if (sc.i >= sc.j) throw InputError("structure constants must be listed with i < j");
      g.at(sc.i - 1, sc.j - 1, sc.k - 1) += sc.value;
      g.at(sc.j - 1, sc.i - 1, sc.k - 1) -= sc.value;
    }
    return g;
  }

  static LieAlgebraData abelian(int d) { return LieAlgebraData(d, {}); }
  /// [x1, x2] = x2
  static LieAlgebraData nonabelian2() { return LieAlgebraData(2, {{1, 2, 2, 1}}); }
  /// [x1, x2] = x3
  static LieAlgebraData heisenberg3() { return LieAlgebraData(3, {{1, 2, 3, 1}}); }
  /// x1 = h, x2 = e, x3 = f
  static LieAlgebraData sl2() {
    return LieAlgebraData(3, {{1, 2, 2, 2}, {1, 3, 3, -2}, {2, 3, 1, 1}});
  }

  static std::optional<LieAlgebraData> builtin(const std::string& name) {
    if (name == "abelian1") return abelian(1);
    if (name == "abelian2") return abelian(2);
    if (name == "abelian3") return abelian(3);
    if (name == "nonabelian2") return nonabelian2();
    if (name == "heisenberg3") return heisenberg3();
    if (name == "sl2") return sl2();
    return std::nullopt;
  }

  int dim() const { return d_; }
  /// c^k_ij, 0-based.
  const Rational& c(int i, int j, int k) const { return c_[idx(i, j, k)]; }

  bool is_abelian() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  /// The list of nonzero c^k_ij with i < j (1-based), in (i, j, k) order.
  std::vector<StructureConstant> constants() const {
    std::vector<StructureConstant> out;
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j)
        for (int k = 0; k < d_; ++k)
          if (c(i, j, k) != 0) out.push_back({i + 1, j + 1, k + 1, c(i, j, k)});
    return out;
  }

  /// Coefficients of [x_i, [x_j, x_l]] + [x_j, [x_l, x_i]] + [x_l, [x_i, x_j]].
  std::vector<Rational> jacobiator(int i, int j, int l) const {
    std::vector<Rational> out(static_cast<std::size_t>(d_), Rational(0));
    auto nested = [&](int a, int b, int e) {
      // [x_a, [x_b, x_e]] = sum_m c^m_be [x_a, x_m] = sum_m,n c^m_be c^n_am x_n
      for (int m = 0; m < d_; ++m) {
        if (c(b, e, m) == 0) continue;
        for (int n = 0; n < d_; ++n) out[static_cast<std::size_t>(n)] += c(b, e, m) * c(a, m, n);
      }
    };
    nested(i, j, l);
    nested(j, l, i);
    nested(l, i, j);
    return out;
  }

  /// First (i, j, l) with nonzero Jacobiator, if any (0-based).
  std::optional<std::array<int, 3>> jacobi_failure() const {
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j)
        for (int l = j + 1; l < d_; ++l)
          for (const auto& v : jacobiator(i, j, l))
            if (v != 0) return std::array{i, j, l};
    return std::nullopt;
  }

 private:
  LieAlgebraData() = default;
  std::size_t idx(int i, int j, int k) const {
    return static_cast<std::size_t>((i * d_ + j) * d_ + k);
  }
  Rational& at(int i, int j, int k) { return c_[idx(i, j, k)]; }

  int d_ = 0;
  std::vector<Rational> c_;
};

/// lambda = sum_{i<j, k} c^k_ij e_k f_i f_j, the bidegree (1,2) element of H
/// for the Lie bracket. [lambda, lambda] = 0 iff the Jacobi identity holds.
inline Element lambda_element(const LieAlgebraData& g) {
  Element out;
  for (const auto& sc : g.constants()) {
    Monomial m = Monomial::from_indices({sc.k}, {sc.i, sc.j});
    out.add(m, sc.value);
  }
  return out;
}

}  // namespace bigbracket
