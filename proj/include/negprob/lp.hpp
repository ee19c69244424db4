#pragma once

#include <cstddef>
#include <vector>

#include "negprob/rational.hpp"

namespace negprob {

// minimize objective . v  subject to  constraints v = rhs,  v >= 0.
struct LpProblem {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> constraints;
  std::vector<Rational> rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  // Populated on Optimal.
  std::vector<Rational> values;
  Rational objective;
  // Column index of each basic variable (redundant rows dropped).
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;
};

// Dense two-phase tableau simplex over exact rationals with Bland's rule.
// Deterministic; terminates on degenerate problems. Throws ValidationError on
// dimension mismatch.
LpOutcome solve_lp(const LpProblem& problem);

const char* to_string(LpStatus status);

}  // namespace negprob
