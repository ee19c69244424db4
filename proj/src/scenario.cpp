#include "negprob/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "negprob/errors.hpp"
#include "negprob/exact_linalg.hpp"

namespace negprob {

Scenario::Scenario(std::vector<PartySpec> parties) : parties_(std::move(parties)) {
  if (parties_.empty()) throw ValidationError("scenario needs at least one party");
  std::uint64_t total = 1;
  for (const auto& p : parties_) {
    if (p.n_settings < 1) throw ValidationError("every party needs at least one setting");
    if (p.n_outcomes < 2) throw ValidationError("every setting needs at least two outcomes");
    slot_offset_.push_back(slot_outcomes_.size());
    std::uint64_t local = 1;
    for (int s = 0; s < p.n_settings; ++s) {
      slot_outcomes_.push_back(p.n_outcomes);
      local *= static_cast<std::uint64_t>(p.n_outcomes);
      if (local > kMaxAtoms) throw SizeError("scenario has more than 2^32 atoms");
    }
    local_count_.push_back(local);
    total *= local;
    if (total > kMaxAtoms) throw SizeError("scenario has more than 2^32 atoms");
    joint_setting_count_ *= static_cast<std::size_t>(p.n_settings);
    joint_outcome_count_ *= static_cast<std::size_t>(p.n_outcomes);
  }
  atom_count_ = total;
  if (static_cast<std::uint64_t>(joint_setting_count_) * joint_outcome_count_ > kMaxMaterializedAtoms)
    throw SizeError("behavior table too large");

  slot_stride_.assign(slot_outcomes_.size(), 1);
  for (std::size_t s = slot_outcomes_.size(); s-- > 1;)
    slot_stride_[s - 1] = slot_stride_[s] * static_cast<std::uint64_t>(slot_outcomes_[s]);
  party_stride_.assign(parties_.size(), 1);
  for (std::size_t p = parties_.size(); p-- > 1;) party_stride_[p - 1] = party_stride_[p] * local_count_[p];
}

Scenario Scenario::bipartite(int nx, int ny, int na, int nb) {
  return Scenario({PartySpec{nx, na}, PartySpec{ny, nb}});
}

Scenario Scenario::binary(std::size_t parties, int settings) {
  return Scenario(std::vector<PartySpec>(parties, PartySpec{settings, 2}));
}

std::vector<int> Scenario::assignment(std::uint64_t atom) const {
  if (atom >= atom_count_) throw ValidationError("atom index out of range");
  std::vector<int> out(slot_outcomes_.size());
  for (std::size_t s = 0; s < out.size(); ++s)
    out[s] = static_cast<int>((atom / slot_stride_[s]) % static_cast<std::uint64_t>(slot_outcomes_[s]));
  return out;
}

std::uint64_t Scenario::atom_index(std::span<const int> assignment) const {
  if (assignment.size() != slot_outcomes_.size()) throw ValidationError("assignment has wrong length");
  std::uint64_t idx = 0;
  for (std::size_t s = 0; s < assignment.size(); ++s) {
    if (assignment[s] < 0 || assignment[s] >= slot_outcomes_[s])
      throw ValidationError("assignment outcome out of range");
    idx += static_cast<std::uint64_t>(assignment[s]) * slot_stride_[s];
  }
  return idx;
}

std::vector<int> Scenario::joint_setting(std::size_t index) const {
  std::vector<int> out(parties_.size());
  for (std::size_t p = parties_.size(); p-- > 0;) {
    const auto n = static_cast<std::size_t>(parties_[p].n_settings);
    out[p] = static_cast<int>(index % n);
    index /= n;
  }
  return out;
}

std::vector<int> Scenario::joint_outcome(std::size_t index) const {
  std::vector<int> out(parties_.size());
  for (std::size_t p = parties_.size(); p-- > 0;) {
    const auto n = static_cast<std::size_t>(parties_[p].n_outcomes);
    out[p] = static_cast<int>(index % n);
    index /= n;
  }
  return out;
}

std::size_t Scenario::joint_setting_index(std::span<const int> settings) const {
  if (settings.size() != parties_.size()) throw ValidationError("setting tuple has wrong length");
  std::size_t idx = 0;
  for (std::size_t p = 0; p < parties_.size(); ++p) {
    if (settings[p] < 0 || settings[p] >= parties_[p].n_settings) throw ValidationError("setting out of range");
    idx = idx * static_cast<std::size_t>(parties_[p].n_settings) + static_cast<std::size_t>(settings[p]);
  }
  return idx;
}

std::size_t Scenario::joint_outcome_index(std::span<const int> outcomes) const {
  if (outcomes.size() != parties_.size()) throw ValidationError("outcome tuple has wrong length");
  std::size_t idx = 0;
  for (std::size_t p = 0; p < parties_.size(); ++p) {
    if (outcomes[p] < 0 || outcomes[p] >= parties_[p].n_outcomes) throw ValidationError("outcome out of range");
    idx = idx * static_cast<std::size_t>(parties_[p].n_outcomes) + static_cast<std::size_t>(outcomes[p]);
  }
  return idx;
}

bool Scenario::is_bipartite_binary() const {
  return parties_.size() == 2 && parties_[0].n_outcomes == 2 && parties_[1].n_outcomes == 2;
}

std::string Scenario::spec_string() const {
  std::ostringstream os;
  for (std::size_t p = 0; p < parties_.size(); ++p) {
    if (p) os << ';';
    os << parties_[p].n_settings << ',' << parties_[p].n_outcomes;
  }
  return os.str();
}

std::string Scenario::label() const {
  if (parties_.size() == 2 && parties_[0].n_settings < 10 && parties_[1].n_settings < 10 &&
      parties_[0].n_outcomes < 10 && parties_[1].n_outcomes < 10) {
    std::ostringstream os;
    os << parties_[0].n_settings << parties_[1].n_settings << parties_[0].n_outcomes << parties_[1].n_outcomes;
    return os.str();
  }
  return spec_string();
}

Scenario parse_scenario_spec(const std::string& text) {
  std::vector<PartySpec> parties;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw ValidationError("party spec must be 'settings,outcomes': '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string a = item.substr(0, comma), b = item.substr(comma + 1);
      const int s = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      const int o = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(b);
      parties.push_back({s, o});
    } catch (const std::logic_error&) {
      throw ValidationError("bad party spec '" + item + "'");
    }
  }
  return Scenario(std::move(parties));
}

// ---------------------------------------------------------------------------

Behavior::Behavior(Scenario scenario, std::vector<Rational> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  if (table_.size() != scenario_.table_size()) throw ValidationError("behavior table has wrong size");
  const std::size_t no = scenario_.joint_outcome_count();
  for (std::size_t s = 0; s < scenario_.joint_setting_count(); ++s) {
    Rational sum = 0;
    for (std::size_t o = 0; o < no; ++o) sum += table_[s * no + o];
    if (sum != 1) {
      std::ostringstream os;
      os << "behavior not normalized at settings (";
      const auto js = scenario_.joint_setting(s);
      for (std::size_t i = 0; i < js.size(); ++i) os << (i ? "," : "") << js[i];
      os << "): sum = " << to_string(sum);
      throw ValidationError(os.str());
    }
  }
}

const Rational& Behavior::p(int a, int b, int x, int y) const {
  if (scenario_.party_count() != 2) throw ValidationError("p(a,b|x,y) needs a bipartite behavior");
  const int s[2] = {x, y};
  const int o[2] = {a, b};
  return (*this)(s, o);
}

QuasiDistribution::QuasiDistribution(Scenario scenario, std::vector<Rational> values)
    : scenario_(std::move(scenario)), values_(std::move(values)) {
  if (scenario_.atom_count() > kMaxMaterializedAtoms) throw SizeError("too many atoms to materialize");
  if (values_.size() != scenario_.atom_count()) throw ValidationError("quasi-distribution has wrong length");
  Rational sum = 0;
  for (const auto& v : values_) sum += v;
  if (sum != 1) throw ValidationError("quasi-distribution sums to " + to_string(sum) + ", not 1");
}

Rational QuasiDistribution::mass() const {
  Rational m = 0;
  for (const auto& v : values_) {
    if (sgn(v) < 0)
      m -= v;
    else
      m += v;
  }
  return m;
}

bool QuasiDistribution::is_proper() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return sgn(v) >= 0; });
}

QuasiDistribution point_mass(const Scenario& scenario, std::uint64_t atom) {
  if (atom >= scenario.atom_count()) throw ValidationError("atom index out of range");
  if (scenario.atom_count() > kMaxMaterializedAtoms) throw SizeError("too many atoms to materialize");
  std::vector<Rational> v(scenario.atom_count());
  v[atom] = 1;
  return QuasiDistribution(scenario, std::move(v));
}

// ---------------------------------------------------------------------------

namespace {

// Joint outcome index of `atom` under joint setting `settings`.
std::size_t atom_outcome_index(const Scenario& sc, std::uint64_t atom, const std::vector<int>& settings) {
  std::size_t idx = 0;
  for (std::size_t p = 0; p < sc.party_count(); ++p)
    idx = idx * static_cast<std::size_t>(sc.party(p).n_outcomes) +
          static_cast<std::size_t>(sc.outcome(atom, p, settings[p]));
  return idx;
}

}  // namespace

MarginalMap marginal_map(const Scenario& scenario) {
  if (scenario.atom_count() > kMaxMaterializedAtoms) throw SizeError("marginal map too large to materialize");
  MarginalMap map{scenario, std::vector<std::vector<std::uint32_t>>(scenario.table_size()), scenario.atom_count()};
  const std::size_t no = scenario.joint_outcome_count();
  for (std::size_t s = 0; s < scenario.joint_setting_count(); ++s) {
    const auto settings = scenario.joint_setting(s);
    for (std::uint64_t atom = 0; atom < scenario.atom_count(); ++atom)
      map.rows[s * no + atom_outcome_index(scenario, atom, settings)].push_back(static_cast<std::uint32_t>(atom));
  }
  return map;
}

std::size_t rank(const MarginalMap& map) {
  IntMatrix m(map.rows.size(), static_cast<std::size_t>(map.columns));
  for (std::size_t r = 0; r < map.rows.size(); ++r)
    for (auto c : map.rows[r]) m(r, c) = 1;
  return rank(std::move(m));
}

Behavior marginals(const QuasiDistribution& jqpd) {
  const Scenario& sc = jqpd.scenario();
  std::vector<Rational> table(sc.table_size());
  const std::size_t no = sc.joint_outcome_count();
  std::vector<std::uint64_t> support;
  for (std::uint64_t a = 0; a < sc.atom_count(); ++a)
    if (sgn(jqpd[a]) != 0) support.push_back(a);
  for (std::size_t s = 0; s < sc.joint_setting_count(); ++s) {
    const auto settings = sc.joint_setting(s);
    for (auto atom : support) table[s * no + atom_outcome_index(sc, atom, settings)] += jqpd[atom];
  }
  return Behavior(sc, std::move(table));
}

Rational sub_marginal(const Behavior& behavior, std::span<const std::size_t> parties,
                      std::span<const int> settings, std::span<const int> outcomes,
                      std::span<const int> others_settings) {
  const Scenario& sc = behavior.scenario();
  const std::size_t n = sc.party_count();
  std::vector<int> js(others_settings.begin(), others_settings.end());
  std::vector<int> fixed(n, -1);
  for (std::size_t i = 0; i < parties.size(); ++i) {
    js[parties[i]] = settings[i];
    fixed[parties[i]] = outcomes[i];
  }
  const std::size_t s = sc.joint_setting_index(js);
  Rational sum = 0;
  std::vector<int> o(n, 0);
  for (std::size_t p = 0; p < n; ++p)
    if (fixed[p] >= 0) o[p] = fixed[p];
  while (true) {
    sum += behavior.at(s, sc.joint_outcome_index(o));
    std::size_t p = n;
    while (p-- > 0) {
      if (fixed[p] >= 0) continue;
      if (++o[p] < sc.party(p).n_outcomes) break;
      o[p] = 0;
    }
    if (p == static_cast<std::size_t>(-1)) break;
  }
  return sum;
}

namespace {

// Odometer increment over the given radices; false when it wraps.
bool next_tuple(std::vector<int>& t, const std::vector<int>& radix) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < radix[i]) return true;
    t[i] = 0;
  }
  return false;
}

std::string tuple_string(const std::vector<int>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

NsReport no_signalling_report(const Behavior& behavior) {
  const Scenario& sc = behavior.scenario();
  const std::size_t n = sc.party_count();
  NsReport report{Rational(0), true, {}};
  if (n < 2) return report;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<std::size_t> subset, others;
    for (std::size_t p = 0; p < n; ++p) (mask >> p & 1u ? subset : others).push_back(p);
    std::vector<int> set_radix, out_radix, other_radix;
    for (auto p : subset) {
      set_radix.push_back(sc.party(p).n_settings);
      out_radix.push_back(sc.party(p).n_outcomes);
    }
    for (auto p : others) other_radix.push_back(sc.party(p).n_settings);

    std::vector<int> settings(subset.size(), 0);
    do {
      std::vector<int> outcomes(subset.size(), 0);
      do {
        Rational lo, hi;
        bool first = true;
        std::vector<int> other_settings(others.size(), 0);
        do {
          std::vector<int> js(n, 0);
          for (std::size_t i = 0; i < others.size(); ++i) js[others[i]] = other_settings[i];
          const Rational v = sub_marginal(behavior, subset, settings, outcomes, js);
          if (first || v < lo) lo = v;
          if (first || v > hi) hi = v;
          first = false;
        } while (next_tuple(other_settings, other_radix));
        const Rational gap = hi - lo;
        if (gap > report.max_discrepancy) {
          report.max_discrepancy = gap;
          std::ostringstream os;
          os << "parties " << tuple_string(std::vector<int>(subset.begin(), subset.end())) << " settings "
             << tuple_string(settings) << " outcomes " << tuple_string(outcomes) << ": marginal ranges over ["
             << to_string(lo) << ", " << to_string(hi) << "] across the other parties' settings";
          report.worst_context = os.str();
        }
      } while (next_tuple(outcomes, out_radix));
    } while (next_tuple(settings, set_radix));
  }
  report.satisfied = sgn(report.max_discrepancy) == 0;
  return report;
}

bool is_proper(const Behavior& behavior) {
  return std::all_of(behavior.table().begin(), behavior.table().end(),
                     [](const Rational& v) { return sgn(v) >= 0; });
}

}  // namespace negprob
