#include "negprob/boxes.hpp"

#include "negprob/errors.hpp"
#include "negprob/inequalities.hpp"

namespace negprob {

Behavior deterministic(const Scenario& scenario, std::uint64_t atom) {
  if (atom >= scenario.atom_count()) throw ValidationError("atom index out of range");
  std::vector<Rational> table(scenario.table_size(), Rational(0));
  const std::size_t no = scenario.joint_outcome_count();
  std::vector<int> outcomes(scenario.party_count());
  for (std::size_t s = 0; s < scenario.joint_setting_count(); ++s) {
    const auto settings = scenario.joint_setting(s);
    for (std::size_t p = 0; p < scenario.party_count(); ++p) outcomes[p] = scenario.outcome(atom, p, settings[p]);
    table[s * no + scenario.joint_outcome_index(outcomes)] = 1;
  }
  return Behavior(scenario, std::move(table));
}

Behavior deterministic(const Scenario& scenario, std::span<const int> assignment) {
  return deterministic(scenario, scenario.atom_index(assignment));
}

Behavior uniform(const Scenario& scenario) {
  const Rational w(1, static_cast<unsigned long>(scenario.joint_outcome_count()));
  return Behavior(scenario, std::vector<Rational>(scenario.table_size(), w));
}

Behavior pr_box(int alpha, int beta, int gamma) {
  for (int v : {alpha, beta, gamma})
    if (v != 0 && v != 1) throw ValidationError("PR box parameters must be 0 or 1");
  const Scenario sc = Scenario::bipartite(2, 2);
  std::vector<Rational> table(sc.table_size(), Rational(0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma))
            table[static_cast<std::size_t>((2 * x + y) * 4 + 2 * a + b)] = Rational(1, 2);
  return Behavior(sc, std::move(table));
}

IsotropicParam::IsotropicParam(Rational x) : x_(std::move(x)) {
  x_.canonicalize();
  if (sgn(x_) < 0 || x_ > 1) throw ValidationError("isotropic parameter must lie in [0, 1], got " + to_string(x_));
}

IsotropicBox isotropic(const IsotropicParam& param) {
  const Scenario sc = Scenario::bipartite(2, 2);
  const Rational& x = param.x();
  std::vector<Rational> values(16);
  for (std::uint64_t a = 0; a < 16; ++a)
    values[a] = chsh_parity(a, 0, 0) == 0 ? Rational(Rational(1, 16) + x / 8) : Rational(Rational(1, 16) - x / 8);
  QuasiDistribution jqpd(sc, std::move(values));
  Behavior behavior = marginals(jqpd);
  return {std::move(jqpd), std::move(behavior)};
}

Behavior correlation_box(const SignMatrix& signs) {
  const int n = signs.n();
  const Scenario sc = Scenario::bipartite(n, n);
  std::vector<Rational> table(sc.table_size());
  const Rational half(1, 2), zero(0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const std::size_t base = static_cast<std::size_t>(x * n + y) * 4;
      const bool plus = signs.at(x, y) > 0;
      // (1 + c)/4 on equal outcomes, (1 - c)/4 on different ones
      const Rational& eq = plus ? half : zero;
      const Rational& ne = plus ? zero : half;
      table[base + 0] = eq;
      table[base + 1] = ne;
      table[base + 2] = ne;
      table[base + 3] = eq;
    }
  return Behavior(sc, std::move(table));
}

int pr_n_free_count(int n) { return (n - 1) * (n - 2) / 2; }

SignMatrix pr_n_signs(int n, std::uint64_t free_bits) {
  if (n < 2 || n > 8) throw ValidationError("PR_N needs 2 <= N <= 8");
  const int free = pr_n_free_count(n);
  if (free < 64 && (free_bits >> free) != 0) throw ValidationError("PR_N variant index out of range");
  std::uint64_t bits = 0;
  int idx = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const std::uint64_t b = std::uint64_t{1} << (x * n + y);
      if (x + y == n)
        bits |= b;
      else if (x + y > n && ((free_bits >> idx++) & 1u))
        bits |= b;
    }
  return SignMatrix(n, bits);
}

Behavior pr_n_box(int n, std::uint64_t free_bits) { return correlation_box(pr_n_signs(n, free_bits)); }

int clone_selector(std::uint64_t atom) {
  const int a0 = (atom >> 5) & 1, a1 = (atom >> 4) & 1;
  const int b0 = (atom >> 3) & 1, b1 = (atom >> 2) & 1;
  const int c0 = (atom >> 1) & 1, c1 = atom & 1;
  const int t = (b0 & c0) ^ (b1 & c1);
  return ((a0 ^ a1) & t) ^ a0 ^ (b0 & c0) ^ ((a0 ^ 1) & (a1 ^ 1) & (b0 ^ c0)) ^ (a1 & (a0 ^ 1) & (b1 ^ c1));
}

QuasiDistribution cloned_isotropic(const IsotropicParam& param) {
  const Scenario sc = Scenario::binary(3, 2);
  const Rational& x = param.x();
  const Rational even = (6 * x + 1) / 64, odd = (1 - 2 * x) / 64;
  std::vector<Rational> values(64);
  for (std::uint64_t a = 0; a < 64; ++a) values[a] = clone_selector(a) == 0 ? even : odd;
  return QuasiDistribution(sc, std::move(values));
}

}  // namespace negprob
