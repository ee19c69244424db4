#include "negprob/lp.hpp"

#include <optional>

#include "negprob/errors.hpp"

namespace negprob {

namespace {

class Tableau {
 public:
  Tableau(const LpProblem& p) : m_(p.rhs.size()), n_(p.objective.size()) {
    rows_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = rows_[i];
      row.assign(n_ + m_ + 1, Rational(0));
      const bool flip = sgn(p.rhs[i]) < 0;
      for (std::size_t j = 0; j < n_; ++j) row[j] = flip ? Rational(-p.constraints[i][j]) : p.constraints[i][j];
      row[n_ + i] = 1;
      row[n_ + m_] = flip ? Rational(-p.rhs[i]) : p.rhs[i];
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  // Runs Bland's rule for costs `c` (indexed by column) over columns < limit.
  // Returns false if unbounded.
  bool optimize(const std::vector<Rational>& c, std::size_t limit) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < limit && !enter; ++j) {
        if (is_basic(j)) continue;
        if (sgn(reduced_cost(c, j)) < 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][*enter];
        if (sgn(a) <= 0) continue;
        Rational ratio = rows_[i].back() / a;
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  Rational reduced_cost(const std::vector<Rational>& c, std::size_t j) const {
    Rational z = c[j];
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (sgn(c[basis_[i]]) != 0 && sgn(rows_[i][j]) != 0) z -= c[basis_[i]] * rows_[i][j];
    return z;
  }

  Rational objective(const std::vector<Rational>& c) const {
    Rational z = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) z += c[basis_[i]] * rows_[i].back();
    return z;
  }

  void pivot(std::size_t r, std::size_t col) {
    ++pivots_;
    auto& pr = rows_[r];
    const Rational inv = 1 / pr[col];
    for (auto& v : pr)
      if (sgn(v) != 0) v *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || sgn(rows_[i][col]) == 0) continue;
      const Rational f = rows_[i][col];
      for (std::size_t j = 0; j < pr.size(); ++j)
        if (sgn(pr[j]) != 0) rows_[i][j] -= f * pr[j];
    }
    basis_[r] = col;
  }

  // Pivots artificial variables out of the basis; drops redundant rows.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n_ && !col; ++j)
        if (sgn(rows_[i][j]) != 0) col = j;
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t pivots() const { return pivots_; }
  const Rational& rhs(std::size_t i) const { return rows_[i].back(); }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpOutcome solve_lp(const LpProblem& problem) {
  const std::size_t n = problem.objective.size();
  if (problem.constraints.size() != problem.rhs.size())
    throw ValidationError("constraint row count does not match rhs length");
  for (const auto& row : problem.constraints)
    if (row.size() != n) throw ValidationError("constraint column count does not match objective length");

  Tableau t(problem);
  const std::size_t m = t.m();
  std::vector<Rational> phase1(n + m + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
  t.optimize(phase1, n + m);  // bounded below by 0
  LpOutcome out;
  if (sgn(t.objective(phase1)) != 0) {
    out.status = LpStatus::Infeasible;
    out.pivots = t.pivots();
    return out;
  }
  t.expel_artificials();

  std::vector<Rational> phase2(n + m + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = problem.objective[j];
  const bool bounded = t.optimize(phase2, n);
  out.pivots = t.pivots();
  if (!bounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.values.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.basis().size(); ++i) out.values[t.basis()[i]] = t.rhs(i);
  out.basis = t.basis();
  out.objective = 0;
  for (std::size_t j = 0; j < n; ++j) out.objective += problem.objective[j] * out.values[j];
  return out;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

}  // namespace negprob
