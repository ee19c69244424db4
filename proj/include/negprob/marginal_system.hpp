#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "negprob/scenario.hpp"

namespace negprob {

// Row-independent restriction of the marginal map: one row per
// Collins-Gisin event (a subset of parties, a setting for each, and an
// outcome other than the last for each; the empty event is normalization).
//
// Its row space equals that of the full marginal map, so for a
// non-signalling behavior the systems {A p = q} and {C p = rhs(q)} have the
// same solutions. Columns factor as a Kronecker product of per-party 0/1
// indicator vectors, which the solvers exploit.
class MarginalSystem {
 public:
  explicit MarginalSystem(const Scenario& scenario);

  const Scenario& scenario() const { return scenario_; }
  std::size_t rows() const { return rows_; }
  std::size_t party_count() const { return local_events_.size(); }
  // Number of local events of party p (1 + n_settings * (n_outcomes - 1)).
  std::size_t local_events(std::size_t p) const { return local_events_[p]; }
  std::size_t row_stride(std::size_t p) const { return row_stride_[p]; }
  // Local events that hold for party p's local assignment (ascending).
  const std::vector<std::uint32_t>& local_support(std::size_t p, std::uint64_t local) const {
    return local_support_[p][local];
  }

  // Rows on which atom's column is 1, ascending.
  std::vector<std::uint32_t> column_support(std::uint64_t atom) const;

  // Right-hand side for a behavior: each event's probability, read with the
  // unconstrained parties at setting 0.
  std::vector<Rational> rhs(const Behavior& behavior) const;

  // C p for an explicit per-atom vector.
  std::vector<Rational> apply(const std::vector<Rational>& atom_values) const;

  // `rows()` atoms whose columns are linearly independent: per party the
  // all-last-outcome assignment plus one assignment per local event.
  std::vector<std::uint64_t> product_basis() const;

  std::string row_label(std::size_t row) const;

 private:
  Scenario scenario_;
  std::size_t rows_ = 1;
  std::vector<std::size_t> local_events_;
  std::vector<std::size_t> row_stride_;
  std::vector<std::vector<std::vector<std::uint32_t>>> local_support_;
};

}  // namespace negprob
