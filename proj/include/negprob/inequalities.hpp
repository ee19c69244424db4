#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "negprob/scenario.hpp"

namespace negprob {

// <A_i B_j> = P(a = b | i, j) - P(a != b | i, j) for a bipartite binary behavior.
Rational correlator(const Behavior& behavior, int i, int j);

// The CHSH family in 2222. For (m, n) in {0,1}^2,
//   S_{m,n} = E(n,m) + E(1-n,m) + E(n,1-m) - E(1-n,1-m),
// i.e. the correlator at Alice setting 1-n, Bob setting 1-m carries the minus
// sign. In atom form S_{m,n} = 2 sum (-1)^{chsh_parity(atom,m,n)} p_atom. The
// remaining four inequalities are the negations.
struct ChshReport {
  // index: 4*m + 2*n + negated
  std::array<Rational, 8> values;
  Rational max_abs;

  const Rational& value(int m, int n, bool negated = false) const { return values[4 * m + 2 * n + (negated ? 1 : 0)]; }
};

ChshReport chsh(const Behavior& behavior);

// (a0 ^ a1)(b0 ^ b1) ^ a_n ^ b_m for a 2222 atom (index a0 a1 b0 b1).
int chsh_parity(std::uint64_t atom, int m, int n);

// Atom-form S_{m,n} of a 2222 quasi-distribution.
Rational chsh_from_jqpd(const QuasiDistribution& jqpd, int m, int n);

// S^2 <= 8: the value is within Tsirelson's bound |S| <= 2 sqrt 2.
inline bool within_tsirelson(const Rational& s) { return s * s <= 8; }

// -- I_NN22 -----------------------------------------------------------------

// Coefficients of I_NN22 <= 0 against (p(a_j=0), p(b_i=0), p(a_j=0,b_i=0)),
// settings 0-based. Alice marginal j: -(N-1-j). Bob marginal: -1 on setting 0.
// Joint [j][i]: 1 for i + j <= N-1, -1 on i + j == N, 0 beyond.
struct Inn22Table {
  int n = 0;
  std::vector<int> alice_marginal;
  std::vector<int> bob_marginal;
  std::vector<std::vector<int>> joint;
  // Atom coefficients range over 0, -1, ..., -k with k = N(N-1)/2.
  int k = 0;
};

Inn22Table inn22_table(int n);

// Per-atom expansion of the table over the 2^{2N} atoms of NN22 (index: Alice
// bits then Bob bits, setting 0 most significant). Values are 0 or -j.
// Computed once per N and shared.
const std::vector<std::int8_t>& inn22_atom_coefficients(int n);

// Table applied to the behavior's Collins-Gisin marginals. Alice marginals are
// read at Bob setting 0 and Bob marginals at Alice setting 0.
Rational inn22_value(const Behavior& behavior, int n);
// Same functional through the per-atom expansion.
Rational inn22_value(const QuasiDistribution& jqpd, int n);

// -- Facet decompositions -----------------------------------------------------

struct ChshFacet {
  int m = 0;
  int n = 0;
  bool negated = false;
};

struct Inn22Facet {
  int n = 2;
};

// Atoms grouped by their coefficient in a facet expression, each class split
// into positive and negative parts. For CHSH, class p holds atoms whose sign
// in S is +1 and the single q class those with -1. For I_NN22, p holds
// coefficient 0 and q[j-1] coefficient -j.
struct FacetDecomposition {
  std::string label;
  Rational p_plus, p_minus;
  std::vector<Rational> q_plus, q_minus;
  // S for CHSH facets, I_NN22 for I_NN22 facets (exact functional value).
  Rational value;
  Rational mass;
};

FacetDecomposition facet_decomposition(const QuasiDistribution& jqpd, const ChshFacet& facet);
FacetDecomposition facet_decomposition(const QuasiDistribution& jqpd, const Inn22Facet& facet);

// How the I_NN22 value is recovered from the class sums: Weighted is
// sum_j j (q_j- - q_j+), which equals the functional; Unweighted drops j.
enum class ClassWeighting { Weighted, Unweighted };

Rational inn22_from_classes(const FacetDecomposition& decomposition, ClassWeighting weighting);

// M - (2 I + 1 - 2 sum_{j>=2} (j-1) q_j-) for a min-mass witness of an NN22
// behavior with I_NN22 > 0. Zero exactly when the witness has p- = q_j+ = 0
// (under Weighted). Throws ValidationError if I_NN22 <= 0.
Rational inn22_mass_residual(const QuasiDistribution& witness, int n,
                             ClassWeighting weighting = ClassWeighting::Weighted);

// Among jqpds of an NN22 behavior with mass exactly `m_star` (its M*), one
// with the smallest weighted residual, i.e. smallest p- + sum_j j q_j+.
// Solved as a secondary LP over the split variables.
struct ResidualWitness {
  QuasiDistribution witness;
  Rational residual;
};

ResidualWitness min_residual_witness(const Behavior& behavior, int n, const Rational& m_star);

}  // namespace negprob
