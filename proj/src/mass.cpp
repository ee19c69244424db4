#include "negprob/mass.hpp"

#include <map>

#include "negprob/exact_linalg.hpp"
#include "negprob/l1_float.hpp"

namespace negprob {

L1Result solve_l1(const MarginalSystem& system, const std::vector<Rational>& rhs,
                  const std::vector<std::uint64_t>& start, L1Pricing pricing) {
  const auto& basis = start.empty() ? system.product_basis() : start;
  try {
    return ExactL1Simplex<Int64Ops>(system, rhs, basis, pricing).solve();
  } catch (const ArithmeticOverflow&) {
    return ExactL1Simplex<BigOps>(system, rhs, basis, pricing).solve();
  }
}

L1Result solve_l1_screened(const MarginalSystem& system, const std::vector<Rational>& rhs) {
  std::vector<double> approx(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) approx[i] = rhs[i].get_d();
  const auto screen = solve_l1_float(system, approx);
  if (screen.converged) {
    try {
      return solve_l1(system, rhs, screen.basis_atoms, L1Pricing::Dantzig);
    } catch (const ValidationError&) {
      // float basis singular in exact arithmetic; start over below
    }
  }
  return solve_l1(system, rhs, {}, L1Pricing::Dantzig);
}

QuasiDistribution witness_from(const MarginalSystem& system, const L1Result& solution) {
  std::vector<Rational> values(system.scenario().atom_count());
  for (std::size_t i = 0; i < solution.basis.size(); ++i) {
    const auto& b = solution.basis[i];
    if (b.sign > 0)
      values[b.atom] += solution.values[i];
    else
      values[b.atom] -= solution.values[i];
  }
  return QuasiDistribution(system.scenario(), std::move(values));
}

MassResult min_mass(const MarginalSystem& system, const Behavior& behavior) {
  auto report = no_signalling_report(behavior);
  if (!report.satisfied) throw SignallingError(std::move(report));
  const auto rhs = system.rhs(behavior);
  // Bland from the product basis is hopeless beyond 4422; screen first there.
  const bool large = system.scenario().is_bipartite_binary() && system.rows() > 25;
  const auto solution = large ? solve_l1_screened(system, rhs) : solve_l1(system, rhs);

  std::map<std::uint64_t, int> seen;
  std::size_t conflicts = 0;
  for (std::size_t i = 0; i < solution.basis.size(); ++i) {
    if (sgn(solution.values[i]) == 0) continue;
    auto [it, fresh] = seen.emplace(solution.basis[i].atom, solution.basis[i].sign);
    if (!fresh && it->second != solution.basis[i].sign) ++conflicts;
  }

  MassResult out{solution.objective, witness_from(system, solution), 0, 0, conflicts, solution.pivots};
  for (const auto& v : out.witness.values()) {
    if (sgn(v) > 0) out.positive_part += v;
    if (sgn(v) < 0) out.negative_part -= v;
  }
  return out;
}

MassResult min_mass(const Behavior& behavior) {
  return min_mass(MarginalSystem(behavior.scenario()), behavior);
}

bool has_jqpd(const Behavior& behavior) {
  const MarginalSystem system(behavior.scenario());
  const auto atoms = system.product_basis();
  const std::size_t r = system.rows();
  IntMatrix b(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (auto k : system.column_support(atoms[i])) b(k, i) = 1;
  const auto x = solve(b, system.rhs(behavior));
  if (!x) throw Error("product basis is singular (internal error)");
  std::vector<Rational> values(behavior.scenario().atom_count());
  for (std::size_t i = 0; i < r; ++i) values[atoms[i]] += (*x)[i];
  // Any solution of the reduced system is a solution of the full one iff one exists.
  return marginals(QuasiDistribution(behavior.scenario(), std::move(values))) == behavior;
}

bool local_feasible(const Behavior& behavior) { return min_mass(behavior).m_star == 1; }

bool verify_witness(const MassResult& result, const Behavior& behavior) {
  if (!(result.witness.scenario() == behavior.scenario())) return false;
  Rational sum = 0, pos = 0, neg = 0;
  for (const auto& v : result.witness.values()) {
    sum += v;
    if (sgn(v) > 0) pos += v;
    if (sgn(v) < 0) neg -= v;
  }
  if (sum != 1) return false;
  if (pos + neg != result.m_star || pos != result.positive_part || neg != result.negative_part) return false;
  return marginals(result.witness) == behavior;
}

}  // namespace negprob
