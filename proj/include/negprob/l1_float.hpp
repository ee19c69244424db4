#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "negprob/marginal_system.hpp"

namespace negprob {

// Double-precision counterpart of ExactL1Simplex for bipartite binary-outcome
// systems. Used only to screen large sweeps: its final basis seeds the exact
// solver, which alone decides reported values.
//
// Pricing picks the most violated column per Alice assignment in closed form
// (Bob's best response is coordinatewise), falling back to Bland's rule after
// a run of non-improving pivots.
struct FloatL1Result {
  bool converged = false;
  double objective = 0;
  std::vector<std::uint64_t> basis_atoms;
  std::size_t iterations = 0;
};

struct FloatL1Options {
  double tolerance = 1e-9;
  std::size_t refactor_every = 256;
  std::size_t stall_limit = 50;
  std::size_t max_iterations = 50000;
  // Starting basis (rows() atoms); product basis when empty or singular.
  std::vector<std::uint64_t> start;
};

FloatL1Result solve_l1_float(const MarginalSystem& system, const std::vector<double>& rhs,
                             const FloatL1Options& options = {});

}  // namespace negprob
