#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "negprob/errors.hpp"
#include "negprob/l1_exact.hpp"
#include "negprob/marginal_system.hpp"
#include "negprob/scenario.hpp"

namespace negprob {

// The behavior admits no joint quasi-distribution.
class SignallingError : public Error {
 public:
  explicit SignallingError(NsReport report)
      : Error("behavior is signalling (discrepancy " + to_string(report.max_discrepancy) + "): " +
              report.worst_context),
        report_(std::move(report)) {}
  const NsReport& report() const { return report_; }

 private:
  NsReport report_;
};

struct MassResult {
  Rational m_star;
  QuasiDistribution witness;
  // Sums of p_i over p_i > 0 and of -p_i over p_i < 0.
  Rational positive_part;
  Rational negative_part;
  // Atoms carrying both a positive and a negative basic part. A basic optimum
  // cannot have any (the two columns are parallel); counted, never repaired.
  std::size_t split_conflicts = 0;
  std::size_t pivots = 0;
};

// Minimal sum |p_i| over jqpds reproducing `behavior`, with a basic optimal
// witness. Throws SignallingError when no jqpd exists.
MassResult min_mass(const Behavior& behavior);
// Same, reusing a prebuilt system for the behavior's scenario.
MassResult min_mass(const MarginalSystem& system, const Behavior& behavior);

// True iff A p = q with sum p = 1 is solvable (no sign constraint).
bool has_jqpd(const Behavior& behavior);

// True iff a proper jpd reproduces the behavior. Throws SignallingError.
bool local_feasible(const Behavior& behavior);

// Recomputes marginals, normalization and mass of the witness exactly.
bool verify_witness(const MassResult& result, const Behavior& behavior);

// Exact L1 optimum of C p = rhs starting from `start` (product basis when
// empty): int64 fast path with big-integer rerun on overflow.
L1Result solve_l1(const MarginalSystem& system, const std::vector<Rational>& rhs,
                  const std::vector<std::uint64_t>& start = {}, L1Pricing pricing = L1Pricing::Bland);

// Floating-point screen first, then the exact solver (Dantzig pricing) from
// the screen's final basis. Same optimal value as solve_l1. Bipartite binary
// only.
L1Result solve_l1_screened(const MarginalSystem& system, const std::vector<Rational>& rhs);

// Atom-indexed witness from an L1 solution.
QuasiDistribution witness_from(const MarginalSystem& system, const L1Result& solution);

}  // namespace negprob
