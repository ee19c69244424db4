#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "negprob/rational.hpp"

namespace negprob {

struct PartySpec {
  int n_settings = 2;
  int n_outcomes = 2;
  bool operator==(const PartySpec&) const = default;
};

// Hard caps on scenario size.
inline constexpr std::uint64_t kMaxAtoms = std::uint64_t{1} << 32;
// Operations that hold one value per atom.
inline constexpr std::uint64_t kMaxMaterializedAtoms = std::uint64_t{1} << 24;

// Party/setting/outcome structure of a Bell-type experiment.
//
// Atoms are global deterministic assignments of an outcome to every
// (party, setting) pair. Their index is mixed-radix over the "slots"
// (party 0 setting 0, party 0 setting 1, ..., party 1 setting 0, ...), with
// the first slot most significant. For 2222 that is a0 a1 b0 b1.
class Scenario {
 public:
  explicit Scenario(std::vector<PartySpec> parties);

  // n_x n_y n_a n_b
  static Scenario bipartite(int nx, int ny, int na = 2, int nb = 2);
  // `parties` parties with identical binary-outcome specs.
  static Scenario binary(std::size_t parties, int settings);

  const std::vector<PartySpec>& parties() const { return parties_; }
  std::size_t party_count() const { return parties_.size(); }
  const PartySpec& party(std::size_t p) const { return parties_.at(p); }

  std::uint64_t atom_count() const { return atom_count_; }
  std::size_t slot_count() const { return slot_outcomes_.size(); }
  std::size_t slot(std::size_t party, int setting) const { return slot_offset_[party] + static_cast<std::size_t>(setting); }
  int slot_outcomes(std::size_t slot) const { return slot_outcomes_[slot]; }

  int outcome(std::uint64_t atom, std::size_t party, int setting) const {
    const std::size_t s = slot(party, setting);
    return static_cast<int>((atom / slot_stride_[s]) % static_cast<std::uint64_t>(slot_outcomes_[s]));
  }
  // One outcome per slot.
  std::vector<int> assignment(std::uint64_t atom) const;
  std::uint64_t atom_index(std::span<const int> assignment) const;

  // Assignment restricted to one party, as a mixed-radix index over that
  // party's settings (setting 0 most significant), and the count of such.
  std::uint64_t local_assignment(std::uint64_t atom, std::size_t party) const {
    return (atom / party_stride_[party]) % local_count_[party];
  }
  std::uint64_t local_count(std::size_t party) const { return local_count_[party]; }
  std::uint64_t party_stride(std::size_t party) const { return party_stride_[party]; }

  // Joint settings/outcomes: one per party, mixed radix, party 0 most significant.
  std::size_t joint_setting_count() const { return joint_setting_count_; }
  std::size_t joint_outcome_count() const { return joint_outcome_count_; }
  std::vector<int> joint_setting(std::size_t index) const;
  std::vector<int> joint_outcome(std::size_t index) const;
  std::size_t joint_setting_index(std::span<const int> settings) const;
  std::size_t joint_outcome_index(std::span<const int> outcomes) const;
  std::size_t table_size() const { return joint_setting_count_ * joint_outcome_count_; }

  bool is_bipartite_binary() const;

  // "2,2;2,2" (settings,outcomes per party); the Behavior file header form.
  std::string spec_string() const;
  // Compact n_x n_y n_a n_b label for bipartite scenarios ("2222"), else spec_string().
  std::string label() const;

  bool operator==(const Scenario& other) const { return parties_ == other.parties_; }

 private:
  std::vector<PartySpec> parties_;
  std::vector<std::size_t> slot_offset_;
  std::vector<int> slot_outcomes_;
  std::vector<std::uint64_t> slot_stride_;
  std::vector<std::uint64_t> party_stride_;
  std::vector<std::uint64_t> local_count_;
  std::uint64_t atom_count_ = 1;
  std::size_t joint_setting_count_ = 1;
  std::size_t joint_outcome_count_ = 1;
};

// Parses the "n_settings,n_outcomes;..." form.
Scenario parse_scenario_spec(const std::string& text);

// Table of P(outcomes | settings), one block of joint outcomes per joint
// setting. Every block sums to exactly 1; entries may be negative (formal
// behaviors).
class Behavior {
 public:
  // Throws ValidationError on size mismatch or a block not summing to 1.
  Behavior(Scenario scenario, std::vector<Rational> table);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<Rational>& table() const { return table_; }

  const Rational& at(std::size_t joint_setting, std::size_t joint_outcome) const {
    return table_[joint_setting * scenario_.joint_outcome_count() + joint_outcome];
  }
  const Rational& operator()(std::span<const int> settings, std::span<const int> outcomes) const {
    return at(scenario_.joint_setting_index(settings), scenario_.joint_outcome_index(outcomes));
  }
  // Bipartite shorthand P(a,b|x,y).
  const Rational& p(int a, int b, int x, int y) const;

  bool operator==(const Behavior& other) const {
    return scenario_ == other.scenario_ && table_ == other.table_;
  }

 private:
  Scenario scenario_;
  std::vector<Rational> table_;
};

// Signed measure over atoms with total weight exactly 1.
class QuasiDistribution {
 public:
  // Throws ValidationError unless values.size() == atom_count and the sum is 1;
  // SizeError beyond kMaxMaterializedAtoms.
  QuasiDistribution(Scenario scenario, std::vector<Rational> values);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](std::uint64_t atom) const { return values_[atom]; }

  // Sum of |p_i|.
  Rational mass() const;
  bool is_proper() const;

  bool operator==(const QuasiDistribution& other) const {
    return scenario_ == other.scenario_ && values_ == other.values_;
  }

 private:
  Scenario scenario_;
  std::vector<Rational> values_;
};

// 0/1 matrix A with q = A p. Row r = joint_setting * joint_outcome_count +
// joint_outcome; each row lists its atom columns in ascending order.
struct MarginalMap {
  Scenario scenario;
  std::vector<std::vector<std::uint32_t>> rows;
  std::uint64_t columns = 0;
};

MarginalMap marginal_map(const Scenario& scenario);

// Rank over the rationals (fraction-free elimination).
std::size_t rank(const MarginalMap& map);

// A p, always a non-signalling behavior.
Behavior marginals(const QuasiDistribution& jqpd);

// Point mass on `atom`.
QuasiDistribution point_mass(const Scenario& scenario, std::uint64_t atom);

struct NsReport {
  Rational max_discrepancy;
  bool satisfied = true;
  // Human-readable description of the worst sub-marginal, empty when satisfied.
  std::string worst_context;
};

// Compares every sub-marginal over a proper nonempty subset of parties across
// all setting choices of the complementary parties.
NsReport no_signalling_report(const Behavior& behavior);

// Feynman's observability criterion on the table entries.
bool is_proper(const Behavior& behavior);

// Probability that the parties in `parties` (ascending) see `outcomes` when
// measuring `settings`, summing over the remaining parties' outcomes with the
// remaining parties at `others_settings` (a full joint-setting vector whose
// entries for `parties` are ignored).
Rational sub_marginal(const Behavior& behavior, std::span<const std::size_t> parties,
                      std::span<const int> settings, std::span<const int> outcomes,
                      std::span<const int> others_settings);

}  // namespace negprob
