#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "negprob/boxes.hpp"
#include "negprob/scenario.hpp"

namespace negprob {

// An observable event of the tripartite cloned scenario: some parties, one
// setting and one outcome each. Parties are 0 = A, 1 = B, 2 = B'.
struct ObservableEvent {
  std::vector<std::size_t> parties;
  std::vector<int> settings;
  std::vector<int> outcomes;
};

// "a_0=0, b_0=1, b'_1=1"
std::string to_string(const ObservableEvent& event);

// Sum of the jqpd over atoms consistent with the event.
Rational event_probability(const QuasiDistribution& jqpd, const ObservableEvent& event);

// Every one-, two- and three-party event, parties ascending, then settings,
// then outcomes.
std::vector<ObservableEvent> observable_events();

// P(a_0=0, b_0=1, b'_1=1), expected (1-2x)/8.
ObservableEvent exhibited_event();

// xor[y][y'][c] = P(b_y ^ b'_y' = c).
using XorTable = std::array<std::array<std::array<Rational, 2>, 2>, 2>;

struct CloneReport {
  Rational x;
  Rational min_observable_marginal;
  ObservableEvent min_event;
  // Every event attaining the minimum.
  std::size_t minimizers = 0;
  Rational exhibited_marginal;
  bool exhibited_is_minimum = false;
  Rational ns_discrepancy;
  bool jqpd_exists = false;
  bool proper = false;
  // (A,B) and (A,B') marginals both equal isotropic(x).behavior.
  bool pairs_match_isotropic = false;
  // Read with Alice at setting 0; xor_alice_independent compares setting 1.
  XorTable xor_statistics;
  bool xor_alice_independent = false;
};

CloneReport clone_report(const IsotropicParam& x);

// Reports for x = 0, step, 2 step, ..., 1. step must divide 1.
std::vector<CloneReport> clone_sweep(const Rational& step);

// Structured text, one "key: value" per line.
std::string format_clone_report(const CloneReport& report);
// x,min_marginal,min_event,exhibited,ns_discrepancy,jqpd_exists,proper
std::string format_clone_csv(const std::vector<CloneReport>& reports);

// Bipartite behavior of parties (0, party) of the cloned jqpd.
Behavior pair_marginal(const QuasiDistribution& cloned, std::size_t party);

// A perfect PR clone would have a ^ b = xy and a ^ b' = xy', so
// b ^ b' = x (y ^ y') and Bob's pair reveals Alice's setting. The static jqpd
// at x = 1 does not: its B B' statistics are fixed before Alice chooses.
struct CloneSignallingWitness {
  // hypothetical[x][y][y'][c] = P(b_y ^ b'_y' = c | Alice setting x)
  std::array<XorTable, 2> hypothetical;
  // Largest total-variation distance between Alice settings over y != y'.
  Rational hypothetical_tv;
  // Same table from cloned_isotropic(1).
  std::array<XorTable, 2> from_jqpd;
  Rational from_jqpd_tv;
};

CloneSignallingWitness pr_clone_signalling_witness();

}  // namespace negprob
