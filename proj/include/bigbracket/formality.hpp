#pragma once

// The E1 page of the deformation complex of H = S(W), W = V (+) V*, with the
// Chevalley-Eilenberg differential Q_l, and the linear algebra that makes
// every degree-one cochain a boundary.
//
// Generators of W are indexed w_0..w_{2d-1} = e_1..e_d, f_1..f_d.

#include <bigbracket/bracket.hpp>
#include <bigbracket/error.hpp>
#include <bigbracket/graded.hpp>
#include <bigbracket/linalg.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bigbracket {

struct DegreeCensus {
  int p;
  int target_power;
  bool vanishes;
};

/// A one-cochain f_p : S^{p+1}(W[3]) -> S^{4-2(p+1)}(W); it vanishes when the power is negative.
inline DegreeCensus degree_census(int p) {
  if (p < 0) throw InputError("degree_census: p must be >= 0");
  const int power = 4 - 2 * (p + 1);
  return {p, power, power < 0};
}

inline Element w_generator(int d, int a) {
  return Element::generator(a < d ? Generator::e(a + 1) : Generator::f(a - d + 1));
}

inline std::string w_name(int d, int a) {
  return a < d ? "e" + std::to_string(a + 1) : "f" + std::to_string(a - d + 1);
}

/// Multisets of size k over {0..m-1} as sorted index lists, in lexicographic order.
inline std::vector<std::vector<int>> multisets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int a = start; a < m; ++a) {
      cur.push_back(a);
      self(self, a);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// The space of cochains S^{p+1}(W[3]) -> S^m(W) with m = t + 1 - 2p, where t
/// is the total degree. A cochain is a (target basis) x (multiset) matrix,
/// flattened as row * sources + col.
class E1Space {
 public:
  E1Space(const Dimension& dim, int p, int total_degree)
      : d_(dim.value()), p_(p), t_(total_degree), power_(total_degree + 1 - 2 * p),
        sources_(multisets(2 * dim.value(), p + 1)), targets_(dim, power_) {
    for (std::size_t k = 0; k < sources_.size(); ++k) source_index_[sources_[k]] = k;
  }

  int p() const { return p_; }
  int total_degree() const { return t_; }
  int target_power() const { return power_; }
  const std::vector<std::vector<int>>& sources() const { return sources_; }
  const DegreeBasis& targets() const { return targets_; }
  std::size_t size() const { return sources_.size() * targets_.size(); }
  std::size_t flat(std::size_t row, std::size_t col) const { return row * sources_.size() + col; }
  std::size_t source_index(const std::vector<int>& sorted) const { return source_index_.at(sorted); }

 private:
  int d_, p_, t_, power_;
  std::vector<std::vector<int>> sources_;
  DegreeBasis targets_;
  std::map<std::vector<int>, std::size_t> source_index_;
};

/// Matrix of Q_l from E1(p, t) to E1(p+1, t+1):
///   (Q f)(a_1..a_{p+2}) = sum_i (-1)^{|a_i|(|a_1|+...+|a_{i-1}|)} [a_i, f(a_1..^a_i..a_{p+2})]
/// with |a| = -2 for a in W[3].
inline RationalMatrix ce_differential(int p, int total_degree, const Dimension& dim, const BracketFn& br = {}) {
  if (p < 0) throw InputError("ce_differential: p must be >= 0");
  const int d = dim.value();
  const E1Space src(dim, p, total_degree), dst(dim, p + 1, total_degree + 1);
  RationalMatrix out(dst.size(), src.size());
  if (src.size() == 0 || dst.size() == 0) return out;
  auto apply = [&br](const Element& a, const Element& b) { return br ? br(a, b) : bracket(a, b); };

  // [w_a, target monomial r] expanded in the next target basis
  std::vector<std::vector<SparseVector>> images(static_cast<std::size_t>(2 * d));
  for (int a = 0; a < 2 * d; ++a)
    for (const auto& m : src.targets().monomials()) {
      SparseVector v;
      const Element image = apply(w_generator(d, a), Element(m));
      for (const auto& [mono, c] : image.terms())
        add_to(v, *dst.targets().index_of(mono), c);
      images[static_cast<std::size_t>(a)].push_back(std::move(v));
    }

  constexpr int kShiftedDegree = -2;
  for (std::size_t col = 0; col < dst.sources().size(); ++col) {
    const auto& args = dst.sources()[col];
    int preceding = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const int sign = (kShiftedDegree * preceding) % 2 ? -1 : 1;
      preceding += kShiftedDegree;
      std::vector<int> rest = args;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      const std::size_t src_col = src.source_index(rest);
      for (std::size_t r = 0; r < src.targets().size(); ++r)
        for (const auto& [r2, c] : images[static_cast<std::size_t>(args[i])][r])
          out.add(dst.flat(r2, col), src.flat(r, src_col), sign * c);
    }
  }
  return out;
}

/// A degree-one cochain f_1 : S^2(W) -> k, given by a symmetric 2d x 2d matrix.
inline void require_symmetric_form(const RationalMatrix& F, int d) {
  const auto n = static_cast<std::size_t>(2 * d);
  if (F.rows() != n || F.cols() != n)
    throw InputError("form must be " + std::to_string(n) + " x " + std::to_string(n));
  if (!(F == F.transpose())) throw InputError("form is not symmetric");
}

/// The value [w_a, g(w_b)] + [w_b, g(w_a)] with g(w_b) = sum_c g(c, b) w_c.
inline Rational boundary_value(const RationalMatrix& g, int d, int a, int b, const BracketFn& br = {}) {
  auto apply = [&br](const Element& x, const Element& y) { return br ? br(x, y) : bracket(x, y); };
  auto image = [&](int k) {
    Element v;
    for (std::size_t c = 0; c < g.rows(); ++c) {
      const Rational& x = g.get(c, static_cast<std::size_t>(k));
      if (x != 0) v = v + x * w_generator(d, static_cast<int>(c));
    }
    return v;
  };
  const Element s = apply(w_generator(d, a), image(b)) + apply(w_generator(d, b), image(a));
  return s.coefficient(Monomial::unit());
}

/// Generator pairs (a, b), a <= b, where the substitution identity fails.
inline std::vector<std::pair<int, int>> boundary_defects(const RationalMatrix& F, const RationalMatrix& g, int d,
                                                         const BracketFn& br = {}) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < 2 * d; ++a)
    for (int b = a; b < 2 * d; ++b)
      if (boundary_value(g, d, a, b, br) != F.get(static_cast<std::size_t>(a), static_cast<std::size_t>(b)))
        out.emplace_back(a, b);
  return out;
}

/// g : W -> W with [a, g(b)] + [b, g(a)] = F(a, b), namely g = B^{-1} F / 2 for
/// the Gram matrix B of the pairing. Empty when B F' = F has no solution.
inline std::optional<RationalMatrix> boundary_construct(const RationalMatrix& F, const Dimension& dim,
                                                        const BracketFn& br = {}) {
  const int d = dim.value();
  require_symmetric_form(F, d);
  const RationalMatrix B = br ? pairing_gram(dim, br) : pairing_gram(dim);
  const auto n = static_cast<std::size_t>(2 * d);
  RationalMatrix g(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    Vector rhs(n);
    for (std::size_t r = 0; r < n; ++r) rhs[r] = F.get(r, col);
    auto x = solve(B, rhs);
    if (!x) return std::nullopt;
    for (std::size_t r = 0; r < n; ++r) g.set(r, col, (*x)[r] / 2);
  }
  if (!boundary_defects(F, g, d, br).empty()) return std::nullopt;
  return g;
}

/// A bracket whose pairing between e_k and f_k is switched off; used to show
/// that the boundary construction depends on nondegeneracy.
inline BracketFn degenerate_bracket(int k) {
  return [k](const Element& a, const Element& b) {
    Element out = bracket(a, b);
    auto touches = [k](const Element& x) {
      for (const auto& [m, c] : x.terms())
        if (((m.e_mask | m.f_mask) >> (k - 1)) & 1u) return true;
      return false;
    };
    if (a.terms().size() == 1 && b.terms().size() == 1 && a.terms().begin()->first.degree() == 1 &&
        b.terms().begin()->first.degree() == 1 && touches(a) && touches(b))
      return Element();
    return out;
  };
}

struct H1Report {
  int dimension = 0;
  std::vector<DegreeCensus> census;
  std::size_t forms_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Every degree-one cochain from the positive part is f_1 alone (census) and
/// each symmetric basis form f_1 = E_ab + E_ba is Q_l of an explicit g.
inline H1Report h1_vanishing_check(const Dimension& dim, const BracketFn& br = {}) {
  const int d = dim.value();
  H1Report rep;
  rep.dimension = d;
  for (int p = 0; p <= 2 * d + 1; ++p) {
    const auto c = degree_census(p);
    rep.census.push_back(c);
    if (c.vanishes != (p > 1)) rep.failures.push_back("census mismatch at p = " + std::to_string(p));
    if (c.vanishes && E1Space(dim, p, 1).size() != 0)
      rep.failures.push_back("nonzero cochain space at p = " + std::to_string(p));
  }
  const RationalMatrix Q = ce_differential(0, 0, dim, br);
  const E1Space g_space(dim, 0, 0), f_space(dim, 1, 1);
  const auto n = static_cast<std::size_t>(2 * d);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      RationalMatrix F(n, n);
      F.set(a, b, 1);
      F.set(b, a, 1);
      ++rep.forms_checked;
      const std::string label = "f1 = " + w_name(d, static_cast<int>(a)) + "*" + w_name(d, static_cast<int>(b));
      const auto g = boundary_construct(F, dim, br);
      if (!g) {
        rep.failures.push_back(label + ": no g with Q_l(g) = f1");
        continue;
      }
      // the same identity through the matrix of Q_l
      Vector gv(g_space.size(), Rational(0));
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t k = 0; k < n; ++k) {
          const auto row = *g_space.targets().index_of(w_generator(d, static_cast<int>(c)).terms().begin()->first);
          gv[g_space.flat(row, g_space.source_index({static_cast<int>(k)}))] = g->get(c, k);
        }
      const Vector qg = Q.apply(gv);
      const std::size_t unit_row = 0;
      const auto col = f_space.source_index({static_cast<int>(a), static_cast<int>(b)});
      if (qg[f_space.flat(unit_row, col)] != 1) rep.failures.push_back(label + ": Q_l matrix disagrees with g");
    }
  return rep;
}

struct InvariantForms {
  int dimension = 0;
  std::vector<RationalMatrix> basis;
  bool proportional_to_pairing = false;
};

/// Symmetric forms F on W with F(Xw, w') + F(w, Xw') = 0 for every elementary X in gl(V),
/// where X acts on V* by -X^T.
inline InvariantForms invariant_form_space(const Dimension& dim) {
  const int d = dim.value();
  const auto n = static_cast<std::size_t>(2 * d);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> unknown;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      unknown[{a, b}] = slots.size();
      slots.emplace_back(a, b);
    }
  auto var = [&](std::size_t a, std::size_t b) { return unknown.at({std::min(a, b), std::max(a, b)}); };

  std::vector<SparseVector> equations;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      RationalMatrix A(n, n);
      A.set(static_cast<std::size_t>(k), static_cast<std::size_t>(l), 1);
      A.set(static_cast<std::size_t>(d + l), static_cast<std::size_t>(d + k), -1);
      // (A^T F + F A)_{ab} = sum_c A_ca F_cb + F_ac A_cb
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
          SparseVector eq;
          for (const auto& [c, v] : A.column(a)) add_to(eq, var(c, b), v);
          for (const auto& [c, v] : A.column(b)) add_to(eq, var(a, c), v);
          if (!eq.empty()) equations.push_back(std::move(eq));
        }
    }
  RationalMatrix system(equations.size(), slots.size());
  for (std::size_t r = 0; r < equations.size(); ++r)
    for (const auto& [c, v] : equations[r]) system.set(r, c, v);

  InvariantForms out;
  out.dimension = d;
  for (const auto& v : kernel_basis(system)) {
    RationalMatrix F(n, n);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      F.set(slots[s].first, slots[s].second, v[s]);
      F.set(slots[s].second, slots[s].first, v[s]);
    }
    out.basis.push_back(std::move(F));
  }
  if (out.basis.size() == 1) {
    const RationalMatrix B = pairing_gram(dim);
    const Rational scale = out.basis[0].get(0, static_cast<std::size_t>(d));
    out.proportional_to_pairing = scale != 0 && out.basis[0] == scale * B;
  }
  return out;
}

}  // namespace bigbracket
