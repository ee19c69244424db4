#include "negprob/marginal_system.hpp"

#include "negprob/errors.hpp"

namespace negprob {

MarginalSystem::MarginalSystem(const Scenario& scenario) : scenario_(scenario) {
  if (scenario_.atom_count() > kMaxMaterializedAtoms) throw SizeError("scenario too large for the reduced marginal system");
  const std::size_t n = scenario_.party_count();
  local_events_.resize(n);
  row_stride_.assign(n, 1);
  local_support_.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& spec = scenario_.party(p);
    local_events_[p] = 1 + static_cast<std::size_t>(spec.n_settings) * static_cast<std::size_t>(spec.n_outcomes - 1);
    rows_ *= local_events_[p];
    const std::uint64_t count = scenario_.local_count(p);
    auto& support = local_support_[p];
    support.resize(count);
    for (std::uint64_t l = 0; l < count; ++l) {
      support[l].push_back(0);
      std::uint64_t rest = l;
      std::vector<int> outcomes(static_cast<std::size_t>(spec.n_settings));
      for (int s = spec.n_settings; s-- > 0;) {
        outcomes[static_cast<std::size_t>(s)] = static_cast<int>(rest % static_cast<std::uint64_t>(spec.n_outcomes));
        rest /= static_cast<std::uint64_t>(spec.n_outcomes);
      }
      for (int s = 0; s < spec.n_settings; ++s) {
        const int o = outcomes[static_cast<std::size_t>(s)];
        if (o < spec.n_outcomes - 1) support[l].push_back(static_cast<std::uint32_t>(1 + s * (spec.n_outcomes - 1) + o));
      }
    }
  }
  for (std::size_t p = n; p-- > 1;) row_stride_[p - 1] = row_stride_[p] * local_events_[p];
}

std::vector<std::uint32_t> MarginalSystem::column_support(std::uint64_t atom) const {
  std::vector<std::uint32_t> rows{0};
  for (std::size_t p = 0; p < party_count(); ++p) {
    const auto& local = local_support(p, scenario_.local_assignment(atom, p));
    std::vector<std::uint32_t> next;
    next.reserve(rows.size() * local.size());
    for (auto r : rows)
      for (auto e : local) next.push_back(r + e * static_cast<std::uint32_t>(row_stride_[p]));
    rows.swap(next);
  }
  return rows;  // ascending: party-major mixed radix with ascending local events
}

std::vector<Rational> MarginalSystem::rhs(const Behavior& behavior) const {
  if (!(behavior.scenario() == scenario_)) throw ValidationError("behavior scenario does not match the system");
  const std::size_t n = party_count();
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::vector<std::size_t> parties;
    std::vector<int> settings, outcomes;
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t e = (r / row_stride_[p]) % local_events_[p];
      if (e == 0) continue;
      const int base = scenario_.party(p).n_outcomes - 1;
      parties.push_back(p);
      settings.push_back(static_cast<int>(e - 1) / base);
      outcomes.push_back(static_cast<int>(e - 1) % base);
    }
    if (parties.empty()) {
      out[r] = 1;
      continue;
    }
    const std::vector<int> others(n, 0);
    out[r] = sub_marginal(behavior, parties, settings, outcomes, others);
  }
  return out;
}

std::vector<Rational> MarginalSystem::apply(const std::vector<Rational>& atom_values) const {
  if (atom_values.size() != scenario_.atom_count()) throw ValidationError("atom vector has wrong length");
  std::vector<Rational> out(rows_);
  for (std::uint64_t a = 0; a < atom_values.size(); ++a) {
    if (sgn(atom_values[a]) == 0) continue;
    for (auto r : column_support(a)) out[r] += atom_values[a];
  }
  return out;
}

std::vector<std::uint64_t> MarginalSystem::product_basis() const {
  const std::size_t n = party_count();
  // Per party: local assignment realizing each local event.
  std::vector<std::vector<std::uint64_t>> local(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& spec = scenario_.party(p);
    const auto base = static_cast<std::uint64_t>(spec.n_outcomes);
    std::uint64_t all_last = 0;
    for (int s = 0; s < spec.n_settings; ++s) all_last = all_last * base + (base - 1);
    local[p].push_back(all_last);
    for (int s = 0; s < spec.n_settings; ++s) {
      std::uint64_t weight = 1;
      for (int t = s + 1; t < spec.n_settings; ++t) weight *= base;
      for (int o = 0; o < spec.n_outcomes - 1; ++o)
        local[p].push_back(all_last - (base - 1 - static_cast<std::uint64_t>(o)) * weight);
    }
  }
  std::vector<std::uint64_t> atoms(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t atom = 0;
    for (std::size_t p = 0; p < n; ++p)
      atom += local[p][(r / row_stride_[p]) % local_events_[p]] * scenario_.party_stride(p);
    atoms[r] = atom;
  }
  return atoms;
}

std::string MarginalSystem::row_label(std::size_t row) const {
  std::string out;
  for (std::size_t p = 0; p < party_count(); ++p) {
    const std::size_t e = (row / row_stride_[p]) % local_events_[p];
    if (e == 0) continue;
    const int base = scenario_.party(p).n_outcomes - 1;
    if (!out.empty()) out += ',';
    out += static_cast<char>('A' + static_cast<int>(p % 26));
    out += std::to_string(static_cast<int>(e - 1) / base) + "=" + std::to_string(static_cast<int>(e - 1) % base);
  }
  return out.empty() ? "norm" : "P(" + out + ")";
}

}  // namespace negprob
