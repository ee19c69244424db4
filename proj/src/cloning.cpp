#include "negprob/cloning.hpp"

#include <sstream>

#include "negprob/errors.hpp"
#include "negprob/mass.hpp"

namespace negprob {

namespace {

constexpr std::size_t kParties = 3;
const char* const kNames[kParties] = {"a", "b", "b'"};

Behavior joint_behavior(const QuasiDistribution& jqpd, const std::vector<std::size_t>& parties) {
  const Scenario& sc = jqpd.scenario();
  const Scenario out = Scenario::bipartite(2, 2);
  std::vector<Rational> table(out.table_size(), Rational(0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int settings[2] = {x, y};
      const std::size_t s = out.joint_setting_index(settings);
      for (std::uint64_t atom = 0; atom < sc.atom_count(); ++atom) {
        const int outcomes[2] = {sc.outcome(atom, parties[0], x), sc.outcome(atom, parties[1], y)};
        table[s * out.joint_outcome_count() + out.joint_outcome_index(outcomes)] += jqpd[atom];
      }
    }
  return Behavior(out, std::move(table));
}

XorTable xor_table(const Behavior& tripartite, int alice_setting) {
  XorTable t{};
  const std::size_t bobs[2] = {1, 2};
  for (int y = 0; y < 2; ++y)
    for (int y2 = 0; y2 < 2; ++y2) {
      const int settings[2] = {y, y2};
      const int others[3] = {alice_setting, 0, 0};
      for (int b = 0; b < 2; ++b)
        for (int b2 = 0; b2 < 2; ++b2) {
          const int outcomes[2] = {b, b2};
          t[y][y2][b ^ b2] += sub_marginal(tripartite, bobs, settings, outcomes, others);
        }
    }
  return t;
}

Rational tv_between_settings(const std::array<XorTable, 2>& t) {
  Rational worst = 0;
  for (int y = 0; y < 2; ++y)
    for (int y2 = 0; y2 < 2; ++y2) {
      if (y == y2) continue;
      Rational d = 0;
      for (int c = 0; c < 2; ++c) d += abs(t[0][y][y2][c] - t[1][y][y2][c]);
      d /= 2;
      if (d > worst) worst = d;
    }
  return worst;
}

}  // namespace

std::string to_string(const ObservableEvent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.parties.size(); ++i) {
    if (i) s += ", ";
    s += std::string(kNames[e.parties[i]]) + "_" + std::to_string(e.settings[i]) + "=" + std::to_string(e.outcomes[i]);
  }
  return s;
}

Rational event_probability(const QuasiDistribution& jqpd, const ObservableEvent& e) {
  const Scenario& sc = jqpd.scenario();
  Rational p = 0;
  for (std::uint64_t atom = 0; atom < sc.atom_count(); ++atom) {
    bool hit = true;
    for (std::size_t i = 0; i < e.parties.size() && hit; ++i)
      hit = sc.outcome(atom, e.parties[i], e.settings[i]) == e.outcomes[i];
    if (hit) p += jqpd[atom];
  }
  return p;
}

std::vector<ObservableEvent> observable_events() {
  std::vector<ObservableEvent> events;
  for (unsigned mask = 1; mask < (1u << kParties); ++mask) {
    std::vector<std::size_t> parties;
    for (std::size_t p = 0; p < kParties; ++p)
      if (mask & (1u << p)) parties.push_back(p);
    const std::size_t k = parties.size();
    for (unsigned s = 0; s < (1u << k); ++s)
      for (unsigned o = 0; o < (1u << k); ++o) {
        ObservableEvent e{parties, std::vector<int>(k), std::vector<int>(k)};
        for (std::size_t i = 0; i < k; ++i) {
          e.settings[i] = (s >> (k - 1 - i)) & 1;
          e.outcomes[i] = (o >> (k - 1 - i)) & 1;
        }
        events.push_back(std::move(e));
      }
  }
  return events;
}

ObservableEvent exhibited_event() { return {{0, 1, 2}, {0, 0, 1}, {0, 1, 1}}; }

Behavior pair_marginal(const QuasiDistribution& cloned, std::size_t party) {
  if (cloned.scenario() != Scenario::binary(3, 2)) throw ValidationError("pair_marginal needs the cloned 3-party scenario");
  if (party != 1 && party != 2) throw ValidationError("pair_marginal: party must be 1 (B) or 2 (B')");
  return joint_behavior(cloned, {0, party});
}

CloneReport clone_report(const IsotropicParam& param) {
  CloneReport r;
  r.x = param.x();
  const QuasiDistribution jqpd = cloned_isotropic(param);
  const Behavior behavior = marginals(jqpd);

  bool first = true;
  for (auto& e : observable_events()) {
    const Rational p = event_probability(jqpd, e);
    if (first || p < r.min_observable_marginal) {
      r.min_observable_marginal = p;
      r.min_event = std::move(e);
      r.minimizers = 1;
      first = false;
    } else if (p == r.min_observable_marginal) {
      ++r.minimizers;
    }
  }
  r.exhibited_marginal = event_probability(jqpd, exhibited_event());
  r.exhibited_is_minimum = r.exhibited_marginal == r.min_observable_marginal;

  const NsReport ns = no_signalling_report(behavior);
  r.ns_discrepancy = ns.max_discrepancy;
  r.jqpd_exists = has_jqpd(behavior);
  r.proper = r.min_observable_marginal >= 0;

  const Behavior iso = isotropic(param).behavior;
  r.pairs_match_isotropic = pair_marginal(jqpd, 1) == iso && pair_marginal(jqpd, 2) == iso;

  r.xor_statistics = xor_table(behavior, 0);
  r.xor_alice_independent = xor_table(behavior, 1) == r.xor_statistics;
  return r;
}

std::vector<CloneReport> clone_sweep(const Rational& step) {
  if (step <= 0 || step > 1) throw ValidationError("clone sweep step must lie in (0, 1]");
  const Rational k = 1 / step;
  if (k.get_den() != 1) throw ValidationError("clone sweep step must divide 1");
  std::vector<CloneReport> out;
  for (Rational x = 0; x <= 1; x += step) out.push_back(clone_report(IsotropicParam(x)));
  return out;
}

std::string format_clone_report(const CloneReport& r) {
  std::ostringstream s;
  s << "x: " << to_string(r.x) << "\n";
  s << "min_observable_marginal: " << to_string(r.min_observable_marginal) << "\n";
  s << "min_event: " << to_string(r.min_event) << "\n";
  s << "minimizing_events: " << r.minimizers << "\n";
  s << "exhibited_event: " << to_string(exhibited_event()) << "\n";
  s << "exhibited_marginal: " << to_string(r.exhibited_marginal) << "\n";
  s << "exhibited_is_minimum: " << (r.exhibited_is_minimum ? "true" : "false") << "\n";
  s << "ns_discrepancy: " << to_string(r.ns_discrepancy) << "\n";
  s << "jqpd_exists: " << (r.jqpd_exists ? "true" : "false") << "\n";
  s << "proper: " << (r.proper ? "true" : "false") << "\n";
  s << "pairs_match_isotropic: " << (r.pairs_match_isotropic ? "true" : "false") << "\n";
  for (int y = 0; y < 2; ++y)
    for (int y2 = 0; y2 < 2; ++y2)
      s << "P(b_" << y << " ^ b'_" << y2 << " = 1): " << to_string(r.xor_statistics[y][y2][1]) << "\n";
  s << "xor_alice_independent: " << (r.xor_alice_independent ? "true" : "false") << "\n";
  return s.str();
}

std::string format_clone_csv(const std::vector<CloneReport>& reports) {
  std::ostringstream s;
  s << "x,min_marginal,min_event,exhibited,ns_discrepancy,jqpd_exists,proper\n";
  for (const auto& r : reports)
    s << to_string(r.x) << "," << to_string(r.min_observable_marginal) << ",\"" << to_string(r.min_event) << "\","
      << to_string(r.exhibited_marginal) << "," << to_string(r.ns_discrepancy) << "," << (r.jqpd_exists ? 1 : 0) << ","
      << (r.proper ? 1 : 0) << "\n";
  return s.str();
}

CloneSignallingWitness pr_clone_signalling_witness() {
  CloneSignallingWitness w{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int y2 = 0; y2 < 2; ++y2)
        for (int a = 0; a < 2; ++a) {
          const int b = a ^ (x & y), b2 = a ^ (x & y2);
          w.hypothetical[x][y][y2][b ^ b2] += Rational(1, 2);
        }
  w.hypothetical_tv = tv_between_settings(w.hypothetical);

  const Behavior behavior = marginals(cloned_isotropic(IsotropicParam(1)));
  for (int x = 0; x < 2; ++x) w.from_jqpd[x] = xor_table(behavior, x);
  w.from_jqpd_tv = tv_between_settings(w.from_jqpd);
  return w;
}

}  // namespace negprob
