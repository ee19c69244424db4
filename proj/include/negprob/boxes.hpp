#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "negprob/scenario.hpp"
#include "negprob/sign_matrix.hpp"

namespace negprob {

// Behavior of a single atom.
Behavior deterministic(const Scenario& scenario, std::uint64_t atom);
// Same, from one outcome per (party, setting) slot.
Behavior deterministic(const Scenario& scenario, std::span<const int> assignment);

// Uniform outcomes in every context.
Behavior uniform(const Scenario& scenario);

// 2222 PR box: P(a,b|x,y) = 1/2 when a ^ b == x*y ^ alpha*x ^ beta*y ^ gamma.
Behavior pr_box(int alpha = 0, int beta = 0, int gamma = 0);

// Isotropic family parameter, 0 <= x <= 1 (exact).
class IsotropicParam {
 public:
  explicit IsotropicParam(Rational x);
  const Rational& x() const { return x_; }

 private:
  Rational x_;
};

// 2222 jqpd with 1/16 + x/8 on the eight atoms where CHSH parity (m=n=0) is
// even and 1/16 - x/8 on the rest, together with its marginals.
struct IsotropicBox {
  QuasiDistribution jqpd;
  Behavior behavior;
};

IsotropicBox isotropic(const IsotropicParam& x);

// NN22 box with uniform marginals and P(a_x=0, b_y=0) = (1 + c_xy)/4, so the
// correlator <A_x B_y> equals c_xy.
Behavior correlation_box(const SignMatrix& signs);

// The PR_N sign pattern: c_xy = -1 on the anti-diagonal x + y == N (0-based
// settings), +1 elsewhere. Entries with x + y > N do not enter I_NN22 and can
// be flipped through `free_bits` (bit i flips the i-th such entry in
// row-major order).
SignMatrix pr_n_signs(int n, std::uint64_t free_bits = 0);
// Number of entries with x + y > N.
int pr_n_free_count(int n);

Behavior pr_n_box(int n, std::uint64_t free_bits = 0);

// Tripartite binary jqpd (parties A, B, B'; 2 settings each) that clones
// Bob's side of the isotropic box. Atom bits a0 a1 b0 b1 b'0 b'1.
QuasiDistribution cloned_isotropic(const IsotropicParam& x);

// The selector f of the cloned jqpd: weight (6x+1)/64 where f == 0 and
// (1-2x)/64 where f == 1.
int clone_selector(std::uint64_t atom);

}  // namespace negprob
