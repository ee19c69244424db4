#pragma once

// Test oracles that share no code with the solvers under test.

#include <cstdint>
#include <optional>
#include <vector>

#include "negprob/l1_exact.hpp"
#include "negprob/lp.hpp"
#include "negprob/marginal_system.hpp"
#include "negprob/rational.hpp"

namespace oracle {

using negprob::Rational;

// Dense Gauss-Jordan over rationals. Solves A x = b for square A; nullopt if
// A is singular.
inline std::optional<std::vector<Rational>> solve_dense(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Inverse of a square rational matrix by Gauss-Jordan on [A | I].
inline std::optional<std::vector<std::vector<Rational>>> invert_dense(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rational piv = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[i][k] -= f * a[c][k];
        inv[i][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Column of the atom as a dense 0/1 vector.
inline std::vector<int> column(const negprob::MarginalSystem& sys, std::uint64_t atom) {
  std::vector<int> col(sys.rows(), 0);
  for (auto k : sys.column_support(atom)) col[k] = 1;
  return col;
}

// Checks that `solution` is an optimal basic solution of min |p|_1 s.t. C p = rhs:
// the basic values reproduce rhs, and the dual y with sign_i (C_{a_i} . y) = 1
// satisfies |C_a . y| <= 1 on every atom with rhs . y = objective.
inline bool certify_l1(const negprob::MarginalSystem& sys, const std::vector<Rational>& rhs,
                       const negprob::L1Result& solution) {
  const std::size_t r = sys.rows();
  if (solution.basis.size() != r || solution.values.size() != r) return false;
  std::vector<Rational> lhs(r, Rational(0));
  Rational mass = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (solution.values[i] < 0) return false;
    mass += solution.values[i];
    const auto col = column(sys, solution.basis[i].atom);
    for (std::size_t k = 0; k < r; ++k)
      if (col[k]) lhs[k] += solution.basis[i].sign * solution.values[i];
  }
  if (lhs != rhs || mass != solution.objective) return false;
  std::vector<std::vector<Rational>> bt(r, std::vector<Rational>(r, Rational(0)));
  std::vector<Rational> cost(r);
  for (std::size_t i = 0; i < r; ++i) {
    const auto col = column(sys, solution.basis[i].atom);
    for (std::size_t k = 0; k < r; ++k) bt[i][k] = col[k];
    cost[i] = solution.basis[i].sign;
  }
  const auto y = solve_dense(bt, cost);
  if (!y) return false;
  Rational bound = 0;
  for (std::size_t k = 0; k < r; ++k) bound += rhs[k] * (*y)[k];
  if (bound != solution.objective) return false;
  const std::uint64_t atoms = sys.scenario().atom_count();
  for (std::uint64_t a = 0; a < atoms; ++a) {
    Rational t = 0;
    for (auto k : sys.column_support(a)) t += (*y)[k];
    if (t > 1 || t < -1) return false;
  }
  return true;
}

// Collins-Gisin rows of a bipartite binary scenario built from the atom bits:
// normalization, p(a_x=0), p(b_y=0), p(a_x=0, b_y=0). Returns rows and rhs.
struct DenseSystem {
  std::vector<std::vector<int>> rows;
  std::vector<Rational> rhs;
};

inline DenseSystem cg_rows(const negprob::Behavior& b) {
  const auto& sc = b.scenario();
  const int nx = sc.party(0).n_settings, ny = sc.party(1).n_settings;
  const std::uint64_t atoms = sc.atom_count();
  DenseSystem d;
  auto add = [&](auto pred, const Rational& v) {
    std::vector<int> row(atoms);
    for (std::uint64_t a = 0; a < atoms; ++a) row[a] = pred(a) ? 1 : 0;
    d.rows.push_back(std::move(row));
    d.rhs.push_back(v);
  };
  add([](std::uint64_t) { return true; }, Rational(1));
  for (int x = 0; x < nx; ++x)
    add([&](std::uint64_t a) { return sc.outcome(a, 0, x) == 0; }, b.p(0, 0, x, 0) + b.p(0, 1, x, 0));
  for (int y = 0; y < ny; ++y)
    add([&](std::uint64_t a) { return sc.outcome(a, 1, y) == 0; }, b.p(0, 0, 0, y) + b.p(1, 0, 0, y));
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      add([&](std::uint64_t a) { return sc.outcome(a, 0, x) == 0 && sc.outcome(a, 1, y) == 0; }, b.p(0, 0, x, y));
  return d;
}

// min sum |p| by the dense two-phase tableau over split variables.
inline Rational dense_min_mass(const negprob::Behavior& b) {
  const DenseSystem d = cg_rows(b);
  const std::size_t atoms = d.rows[0].size();
  negprob::LpProblem lp;
  lp.objective.assign(2 * atoms, Rational(1));
  for (const auto& row : d.rows) {
    std::vector<Rational> r(2 * atoms);
    for (std::size_t a = 0; a < atoms; ++a) {
      r[2 * a] = row[a];
      r[2 * a + 1] = -row[a];
    }
    lp.constraints.push_back(std::move(r));
  }
  lp.rhs = d.rhs;
  const auto out = negprob::solve_lp(lp);
  if (out.status != negprob::LpStatus::Optimal) return Rational(-1);
  return out.objective;
}

// 2222 only: min sum |p| over the basic solutions of the 9 CG rows, i.e. over
// every nonsingular choice of 9 of the 16 atoms. Inverses are computed once.
class BasisEnumeration2222 {
 public:
  BasisEnumeration2222() {
    const negprob::Scenario sc = negprob::Scenario::bipartite(2, 2);
    std::vector<Rational> table(sc.table_size(), Rational(1, 4));
    const DenseSystem d = cg_rows(negprob::Behavior(sc, table));
    for (unsigned mask = 0; mask < (1u << 16); ++mask) {
      if (__builtin_popcount(mask) != 9) continue;
      std::vector<int> cols;
      for (int a = 0; a < 16; ++a)
        if (mask & (1u << a)) cols.push_back(a);
      std::vector<std::vector<Rational>> m(9, std::vector<Rational>(9));
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) m[i][j] = d.rows[i][cols[j]];
      if (auto inv = invert_dense(std::move(m))) inverses_.push_back(std::move(*inv));
    }
  }

  std::size_t bases() const { return inverses_.size(); }

  Rational min_mass(const negprob::Behavior& b) const {
    const DenseSystem d = cg_rows(b);
    Rational best = -1;
    for (const auto& inv : inverses_) {
      Rational mass = 0;
      for (int i = 0; i < 9; ++i) {
        Rational v = 0;
        for (int k = 0; k < 9; ++k) v += inv[i][k] * d.rhs[k];
        mass += abs(v);
      }
      if (best < 0 || mass < best) best = mass;
    }
    return best;
  }

 private:
  std::vector<std::vector<std::vector<Rational>>> inverses_;
};

}  // namespace oracle
