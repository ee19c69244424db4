#include "negprob/inequalities.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

#include "negprob/errors.hpp"
#include "negprob/lp.hpp"
#include "negprob/marginal_system.hpp"

namespace negprob {

namespace {

void require_bipartite_binary(const Scenario& sc) {
  if (!sc.is_bipartite_binary()) throw ValidationError("expected a bipartite binary-outcome scenario, got " + sc.label());
}

void require_2222(const Scenario& sc) {
  if (!(sc == Scenario::bipartite(2, 2))) throw ValidationError("expected a 2222 scenario, got " + sc.label());
}

void require_nn22(const Scenario& sc, int n) {
  if (!(sc == Scenario::bipartite(n, n))) throw ValidationError("expected an NN22 scenario with N = " + std::to_string(n) + ", got " + sc.label());
}

int bit(std::uint64_t atom, int pos) { return static_cast<int>((atom >> pos) & 1u); }

}  // namespace

Rational correlator(const Behavior& behavior, int i, int j) {
  const Scenario& sc = behavior.scenario();
  require_bipartite_binary(sc);
  if (i < 0 || i >= sc.party(0).n_settings || j < 0 || j >= sc.party(1).n_settings)
    throw ValidationError("correlator setting index out of range");
  return behavior.p(0, 0, i, j) + behavior.p(1, 1, i, j) - behavior.p(0, 1, i, j) - behavior.p(1, 0, i, j);
}

ChshReport chsh(const Behavior& behavior) {
  require_2222(behavior.scenario());
  Rational e[2][2];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) e[x][y] = correlator(behavior, x, y);
  ChshReport report;
  report.max_abs = 0;
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      const Rational s = e[n][m] + e[1 - n][m] + e[n][1 - m] - e[1 - n][1 - m];
      report.values[static_cast<std::size_t>(4 * m + 2 * n)] = s;
      report.values[static_cast<std::size_t>(4 * m + 2 * n + 1)] = -s;
      const Rational a = abs_value(s);
      if (a > report.max_abs) report.max_abs = a;
    }
  return report;
}

int chsh_parity(std::uint64_t atom, int m, int n) {
  const int a0 = bit(atom, 3), a1 = bit(atom, 2), b0 = bit(atom, 1), b1 = bit(atom, 0);
  const int an = n == 0 ? a0 : a1;
  const int bm = m == 0 ? b0 : b1;
  return ((a0 ^ a1) & (b0 ^ b1)) ^ an ^ bm;
}

Rational chsh_from_jqpd(const QuasiDistribution& jqpd, int m, int n) {
  require_2222(jqpd.scenario());
  Rational s = 0;
  for (std::uint64_t a = 0; a < 16; ++a) {
    if (chsh_parity(a, m, n))
      s -= jqpd[a];
    else
      s += jqpd[a];
  }
  return 2 * s;
}

Inn22Table inn22_table(int n) {
  if (n < 2) throw ValidationError("I_NN22 needs N >= 2");
  Inn22Table t;
  t.n = n;
  t.k = n * (n - 1) / 2;
  for (int j = 0; j < n; ++j) t.alice_marginal.push_back(-(n - 1 - j));
  t.bob_marginal.assign(static_cast<std::size_t>(n), 0);
  t.bob_marginal[0] = -1;
  t.joint.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i + j <= n - 1)
        t.joint[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
      else if (i + j == n)
        t.joint[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -1;
    }
  return t;
}

const std::vector<std::int8_t>& inn22_atom_coefficients(int n) {
  if (n < 2 || n > 12) throw ValidationError("I_NN22 atom expansion supports 2 <= N <= 12");
  static std::shared_mutex mutex;
  static std::map<int, std::unique_ptr<const std::vector<std::int8_t>>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  std::unique_lock lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return *it->second;

  const Inn22Table t = inn22_table(n);
  const std::uint64_t half = std::uint64_t{1} << n;
  auto coeffs = std::make_unique<std::vector<std::int8_t>>(half * half);
  for (std::uint64_t a = 0; a < half; ++a)
    for (std::uint64_t b = 0; b < half; ++b) {
      int c = 0;
      for (int j = 0; j < n; ++j) {
        const bool aj = bit(a, n - 1 - j) == 0;
        if (aj) c += t.alice_marginal[static_cast<std::size_t>(j)];
        for (int i = 0; i < n; ++i) {
          const bool bi = bit(b, n - 1 - i) == 0;
          if (j == 0 && bi) c += t.bob_marginal[static_cast<std::size_t>(i)];
          if (aj && bi) c += t.joint[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
      }
      if (c > 0 || c < -t.k) throw Error("I_NN22 atom coefficient out of range (internal error)");
      (*coeffs)[a * half + b] = static_cast<std::int8_t>(c);
    }
  const auto& ref = *coeffs;
  cache.emplace(n, std::move(coeffs));
  return ref;
}

Rational inn22_value(const Behavior& behavior, int n) {
  require_nn22(behavior.scenario(), n);
  const Inn22Table t = inn22_table(n);
  Rational v = 0;
  for (int j = 0; j < n; ++j) {
    const Rational pa = behavior.p(0, 0, j, 0) + behavior.p(0, 1, j, 0);
    v += t.alice_marginal[static_cast<std::size_t>(j)] * pa;
  }
  for (int i = 0; i < n; ++i) {
    const Rational pb = behavior.p(0, 0, 0, i) + behavior.p(1, 0, 0, i);
    v += t.bob_marginal[static_cast<std::size_t>(i)] * pb;
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) v += t.joint[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * behavior.p(0, 0, j, i);
  return v;
}

Rational inn22_value(const QuasiDistribution& jqpd, int n) {
  require_nn22(jqpd.scenario(), n);
  const auto& coeffs = inn22_atom_coefficients(n);
  Rational v = 0;
  for (std::uint64_t a = 0; a < coeffs.size(); ++a)
    if (coeffs[a] != 0 && sgn(jqpd[a]) != 0) v += coeffs[a] * jqpd[a];
  return v;
}

FacetDecomposition facet_decomposition(const QuasiDistribution& jqpd, const ChshFacet& facet) {
  require_2222(jqpd.scenario());
  if (facet.m < 0 || facet.m > 1 || facet.n < 0 || facet.n > 1) throw ValidationError("CHSH facet indices must be 0 or 1");
  FacetDecomposition d;
  d.label = "CHSH(m=" + std::to_string(facet.m) + ",n=" + std::to_string(facet.n) + (facet.negated ? ",-)" : ",+)");
  d.q_plus.assign(1, Rational(0));
  d.q_minus.assign(1, Rational(0));
  for (std::uint64_t a = 0; a < 16; ++a) {
    const Rational& v = jqpd[a];
    const bool in_p = (chsh_parity(a, facet.m, facet.n) == 0) != facet.negated;
    if (sgn(v) > 0) (in_p ? d.p_plus : d.q_plus[0]) += v;
    if (sgn(v) < 0) (in_p ? d.p_minus : d.q_minus[0]) -= v;
  }
  d.value = 2 * (d.p_plus - d.p_minus - d.q_plus[0] + d.q_minus[0]);
  d.mass = d.p_plus + d.p_minus + d.q_plus[0] + d.q_minus[0];
  return d;
}

FacetDecomposition facet_decomposition(const QuasiDistribution& jqpd, const Inn22Facet& facet) {
  require_nn22(jqpd.scenario(), facet.n);
  const auto& coeffs = inn22_atom_coefficients(facet.n);
  const int k = facet.n * (facet.n - 1) / 2;
  FacetDecomposition d;
  d.label = "I_NN22(N=" + std::to_string(facet.n) + ")";
  d.q_plus.assign(static_cast<std::size_t>(k), Rational(0));
  d.q_minus.assign(static_cast<std::size_t>(k), Rational(0));
  for (std::uint64_t a = 0; a < coeffs.size(); ++a) {
    const Rational& v = jqpd[a];
    const int s = sgn(v);
    if (s == 0) continue;
    const int c = -coeffs[a];
    if (c == 0) {
      (s > 0 ? d.p_plus : d.p_minus) += s > 0 ? v : Rational(-v);
    } else {
      auto& slot = s > 0 ? d.q_plus[static_cast<std::size_t>(c - 1)] : d.q_minus[static_cast<std::size_t>(c - 1)];
      slot += s > 0 ? v : Rational(-v);
    }
  }
  d.mass = d.p_plus + d.p_minus;
  d.value = 0;
  for (int j = 1; j <= k; ++j) {
    const auto idx = static_cast<std::size_t>(j - 1);
    d.mass += d.q_plus[idx] + d.q_minus[idx];
    d.value += j * (d.q_minus[idx] - d.q_plus[idx]);
  }
  return d;
}

Rational inn22_from_classes(const FacetDecomposition& d, ClassWeighting weighting) {
  Rational v = 0;
  for (std::size_t i = 0; i < d.q_plus.size(); ++i) {
    const Rational diff = d.q_minus[i] - d.q_plus[i];
    v += weighting == ClassWeighting::Weighted ? Rational(static_cast<long>(i + 1) * diff) : diff;
  }
  return v;
}

Rational inn22_mass_residual(const QuasiDistribution& witness, int n, ClassWeighting weighting) {
  const auto d = facet_decomposition(witness, Inn22Facet{n});
  if (sgn(d.value) <= 0) throw ValidationError("I_NN22 is not violated (value " + to_string(d.value) + ")");
  const Rational i = inn22_from_classes(d, weighting);
  Rational correction = 0;
  for (std::size_t j = 2; j <= d.q_minus.size(); ++j) correction += static_cast<long>(j - 1) * d.q_minus[j - 1];
  return d.mass - (2 * i + 1 - 2 * correction);
}

ResidualWitness min_residual_witness(const Behavior& behavior, int n, const Rational& m_star) {
  require_nn22(behavior.scenario(), n);
  const MarginalSystem system(behavior.scenario());
  const auto& coeffs = inn22_atom_coefficients(n);
  const std::size_t atoms = coeffs.size(), r = system.rows();
  // columns 2a (p+) and 2a+1 (p-)
  LpProblem lp;
  lp.objective.assign(2 * atoms, Rational(0));
  lp.constraints.assign(r + 1, std::vector<Rational>(2 * atoms, Rational(0)));
  lp.rhs = system.rhs(behavior);
  lp.rhs.push_back(m_star);
  for (std::uint64_t a = 0; a < atoms; ++a) {
    for (auto k : system.column_support(a)) {
      lp.constraints[k][2 * a] = 1;
      lp.constraints[k][2 * a + 1] = -1;
    }
    lp.constraints[r][2 * a] = 1;
    lp.constraints[r][2 * a + 1] = 1;
    if (coeffs[a] == 0)
      lp.objective[2 * a + 1] = 1;
    else
      lp.objective[2 * a] = -coeffs[a];
  }
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw ValidationError("no jqpd with mass " + to_string(m_star) + " (" + to_string(sol.status) + ")");
  std::vector<Rational> values(atoms);
  for (std::uint64_t a = 0; a < atoms; ++a) values[a] = sol.values[2 * a] - sol.values[2 * a + 1];
  return {QuasiDistribution(behavior.scenario(), std::move(values)), 2 * sol.objective};
}

}  // namespace negprob
