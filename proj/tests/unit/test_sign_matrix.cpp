#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "negprob/errors.hpp"
#include "negprob/sign_matrix.hpp"

using namespace negprob;

namespace {

SignMatrix permute(const SignMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols,
                   std::uint64_t row_flips, std::uint64_t col_flips) {
  const int n = m.n();
  std::uint64_t bits = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int v = m.at(rows[x], cols[y]);
      if ((row_flips >> x) & 1) v = -v;
      if ((col_flips >> y) & 1) v = -v;
      if (v < 0) bits |= std::uint64_t{1} << (x * n + y);
    }
  return SignMatrix(n, bits);
}

}  // namespace

TEST(SignMatrix, ToStringRoundTrip) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 8; ++n)
    for (int t = 0; t < 20; ++t) {
      const std::uint64_t mask = n == 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n * n)) - 1;
      const SignMatrix m(n, rng() & mask);
      EXPECT_EQ(parse_sign_matrix(m.to_string()), m);
    }
  EXPECT_EQ(SignMatrix(2, 0b1000).to_string(), "++/+-");
}

TEST(SignMatrix, ParseErrors) {
  EXPECT_THROW(parse_sign_matrix(""), ValidationError);
  EXPECT_THROW(parse_sign_matrix("++/+"), ValidationError);
  EXPECT_THROW(parse_sign_matrix("+x/++"), ValidationError);
  EXPECT_THROW(parse_sign_matrix("+++/+++"), ValidationError);
  EXPECT_THROW(SignMatrix(9, 0), ValidationError);
}

TEST(SignMatrix, RankOne) {
  EXPECT_TRUE(SignMatrix(3, 0).rank_one());
  EXPECT_FALSE(SignMatrix(2, 0b1000).rank_one());
  // u = (+,-,+), v = (-,+,+)
  EXPECT_TRUE(parse_sign_matrix("-++/+--/-++").rank_one());
  for (int n = 1; n <= 3; ++n) {
    int count = 0;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << (n * n)); ++b) count += SignMatrix(n, b).rank_one();
    EXPECT_EQ(count, 1 << (2 * n - 1));
  }
}

TEST(SignMatrix, Normalized) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const SignMatrix m(4, rng() & 0xffff);
    const SignMatrix z = m.normalized();
    EXPECT_TRUE(z.is_normalized());
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(z.at(i, 0), 1);
      EXPECT_EQ(z.at(0, i), 1);
    }
    EXPECT_EQ(z.rank_one(), m.rank_one());
  }
}

TEST(SignMatrix, CanonicalAndInvariantAreOrbitFunctions) {
  std::mt19937_64 rng(11);
  for (int n = 3; n <= 5; ++n) {
    const std::uint64_t mask = (std::uint64_t{1} << (n * n)) - 1;
    for (int t = 0; t < 20; ++t) {
      const SignMatrix m(n, rng() & mask);
      std::vector<int> rows(n), cols(n);
      std::iota(rows.begin(), rows.end(), 0);
      std::iota(cols.begin(), cols.end(), 0);
      std::shuffle(rows.begin(), rows.end(), rng);
      std::shuffle(cols.begin(), cols.end(), rng);
      const SignMatrix p = permute(m, rows, cols, rng() & ((1u << n) - 1), rng() & ((1u << n) - 1));
      EXPECT_EQ(p.canonical(), m.canonical());
      EXPECT_EQ(p.invariant(), m.invariant());
      EXPECT_TRUE(m.canonical().is_normalized());
    }
  }
  // Transpose is not a symmetry of the group.
  EXPECT_EQ(SignMatrix(2, 0b1000).canonical(), SignMatrix(2, 0b0001).canonical());
}

TEST(SignOrbits, SizesSumToAllMatrices) {
  for (int n = 1; n <= 4; ++n) {
    std::uint64_t total = 0;
    std::set<std::uint64_t> reps;
    for (const auto& o : sign_orbits(n)) {
      total += o.size;
      EXPECT_EQ(o.representative.canonical(), o.representative);
      reps.insert(o.representative.bits());
    }
    EXPECT_EQ(total, std::uint64_t{1} << (n * n));
    EXPECT_EQ(reps.size(), sign_orbits(n).size());
  }
}

TEST(SignOrbits, MatchesBruteForceCanonicalCount) {
  for (int n = 2; n <= 3; ++n) {
    std::map<std::uint64_t, std::uint64_t> brute;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << (n * n)); ++b) ++brute[SignMatrix(n, b).canonical().bits()];
    const auto orbits = sign_orbits(n);
    ASSERT_EQ(orbits.size(), brute.size());
    for (const auto& o : orbits) EXPECT_EQ(brute[o.representative.bits()], o.size);
  }
}
