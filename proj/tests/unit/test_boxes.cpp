#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "negprob/boxes.hpp"
#include "negprob/errors.hpp"
#include "negprob/inequalities.hpp"
#include "negprob/mass.hpp"

using namespace negprob;

TEST(Deterministic, AllZeroAssignment) {
  const Scenario sc = Scenario::bipartite(2, 2);
  const int zero[4] = {0, 0, 0, 0};
  const Behavior b = deterministic(sc, zero);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) EXPECT_EQ(b.p(0, 0, x, y), 1);
  std::set<std::vector<Rational>> distinct;
  for (std::uint64_t a = 0; a < 16; ++a) distinct.insert(deterministic(sc, a).table());
  EXPECT_EQ(distinct.size(), 16u);
  const int bad[4] = {0, 2, 0, 0};
  EXPECT_THROW(deterministic(sc, bad), ValidationError);
  EXPECT_THROW(deterministic(sc, 16), ValidationError);
}

TEST(PrBox, EightDistinctNonSignallingVariants) {
  std::set<std::vector<Rational>> distinct;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int g = 0; g < 2; ++g) {
        const Behavior box = pr_box(a, b, g);
        distinct.insert(box.table());
        EXPECT_EQ(no_signalling_report(box).max_discrepancy, 0);
        EXPECT_EQ(min_mass(box).m_star, 2);
        EXPECT_EQ(chsh(box).max_abs, 4);
      }
  EXPECT_EQ(distinct.size(), 8u);
  EXPECT_THROW(pr_box(2, 0, 0), ValidationError);
}

TEST(Isotropic, Endpoints) {
  EXPECT_EQ(isotropic(IsotropicParam(0)).behavior, uniform(Scenario::bipartite(2, 2)));
  EXPECT_EQ(isotropic(IsotropicParam(1)).behavior, pr_box());
  const Behavior half = isotropic(IsotropicParam(Rational(1, 2))).behavior;
  EXPECT_EQ(min_mass(half).m_star, 1);
  EXPECT_EQ(chsh(half).max_abs, 2);
  EXPECT_THROW(IsotropicParam(Rational(-1, 8)), ValidationError);
  EXPECT_THROW(IsotropicParam(Rational(9, 8)), ValidationError);
}

TEST(Isotropic, MassLaw) {
  for (int k = 0; k <= 16; ++k) {
    Rational x(k, 16);
    x.canonicalize();
    const Rational m = min_mass(isotropic(IsotropicParam(x)).behavior).m_star;
    EXPECT_EQ(m, x <= Rational(1, 2) ? Rational(1) : Rational(2 * x)) << to_string(x);
  }
}

TEST(Isotropic, JqpdWeights) {
  const Rational x(3, 8);
  const auto box = isotropic(IsotropicParam(x));
  for (std::uint64_t a = 0; a < 16; ++a)
    EXPECT_EQ(box.jqpd[a], chsh_parity(a, 0, 0) == 0 ? Rational(Rational(1, 16) + x / 8) : Rational(Rational(1, 16) - x / 8));
  EXPECT_EQ(marginals(box.jqpd), box.behavior);
}

TEST(CorrelationBox, MarginalsAndCorrelators) {
  const SignMatrix c(3, 0b101010011);
  const Behavior b = correlation_box(c);
  EXPECT_EQ(no_signalling_report(b).max_discrepancy, 0);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      EXPECT_EQ(correlator(b, x, y), c.at(x, y));
      EXPECT_EQ(b.p(0, 0, x, y) + b.p(0, 1, x, y), Rational(1, 2));
    }
}

TEST(CorrelationBox, TwoByTwoPrPattern) {
  // (+,+;+,-)
  EXPECT_EQ(correlation_box(SignMatrix(2, 0b1000)), pr_box());
}

TEST(CorrelationBox, LocalIffRankOne) {
  for (int n = 2; n <= 3; ++n) {
    const MarginalSystem sys(Scenario::bipartite(n, n));
    int local = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits) {
      const SignMatrix c(n, bits);
      const bool is_local = solve_l1(sys, sys.rhs(correlation_box(c))).objective == 1;
      EXPECT_EQ(is_local, c.rank_one()) << c.to_string();
      local += is_local;
    }
    EXPECT_EQ(local, 1 << (2 * n - 1));
  }
}

TEST(CorrelationBox, MassBoundedBySettings) {
  for (int n = 2; n <= 4; ++n) {
    const MarginalSystem sys(Scenario::bipartite(n, n));
    for (std::uint64_t bits = 0; bits < 64; ++bits) {
      const SignMatrix c(n, (bits * 0x9e3779b97f4a7c15ull) >> (64 - n * n));
      EXPECT_LE(solve_l1(sys, sys.rhs(correlation_box(c))).objective, n);
    }
  }
}

TEST(PrN, SignPattern) {
  EXPECT_EQ(pr_n_signs(2).to_string(), "++/+-");
  EXPECT_EQ(pr_n_signs(3).to_string(), "+++/++-/+-+");
  EXPECT_EQ(pr_n_signs(4).to_string(), "++++/+++-/++-+/+-++");
  EXPECT_EQ(pr_n_free_count(4), 3);
  EXPECT_EQ(pr_n_free_count(8), 21);
  EXPECT_EQ(pr_n_signs(3, 1).to_string(), "+++/++-/+--");
  EXPECT_THROW(pr_n_signs(4, 8), ValidationError);
  EXPECT_THROW(pr_n_box(9), ValidationError);
}

TEST(PrN, SmallCases) {
  EXPECT_EQ(pr_n_box(2), pr_box());
  EXPECT_EQ(min_mass(pr_n_box(3)).m_star, 2);
  std::set<Rational> classes;
  for (std::uint64_t f = 0; f < 8; ++f) {
    EXPECT_EQ(inn22_value(pr_n_box(4, f), 4), Rational(3, 2));
    classes.insert(min_mass(pr_n_box(4, f)).m_star);
  }
  EXPECT_EQ(classes, (std::set<Rational>{Rational(7, 3), Rational(12, 5)}));
}

TEST(PrN, MaximizesInn22OverCorrelationBoxes) {
  for (int n = 2; n <= 4; ++n) {
    Rational best = -100;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits) {
      const Rational v = inn22_value(correlation_box(SignMatrix(n, bits)), n);
      if (v > best) best = v;
    }
    EXPECT_EQ(best, inn22_value(pr_n_box(n), n)) << n;
  }
}

TEST(ClonedIsotropic, SelectorMatchesFixture) {
  std::ifstream in(std::string(NEGPROB_FIXTURES) + "/clone_selector.txt");
  ASSERT_TRUE(in);
  std::string line;
  int rows = 0, zeros = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream s(line);
    int bits[6], f;
    for (int& b : bits) s >> b;
    s >> f;
    std::uint64_t atom = 0;
    for (int b : bits) atom = (atom << 1) | static_cast<std::uint64_t>(b);
    EXPECT_EQ(clone_selector(atom), f) << line;
    ++rows;
    zeros += f == 0;
  }
  EXPECT_EQ(rows, 64);
  EXPECT_EQ(zeros, 16);
}

TEST(ClonedIsotropic, NormalizedAndNegativeMarginal) {
  for (int k = 0; k <= 8; ++k) {
    Rational x(k, 8);
    x.canonicalize();
    const auto p = cloned_isotropic(IsotropicParam(x));
    Rational sum = 0, event = 0;
    for (std::uint64_t a = 0; a < 64; ++a) {
      sum += p[a];
      // a0 = 0, b0 = 1, b'1 = 1
      if (((a >> 5) & 1) == 0 && ((a >> 3) & 1) == 1 && (a & 1) == 1) event += p[a];
    }
    EXPECT_EQ(sum, 1);
    EXPECT_EQ(event, (1 - 2 * x) / 8);
  }
}
