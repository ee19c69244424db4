#include <gtest/gtest.h>

#include <random>

#include "negprob/boxes.hpp"
#include "negprob/errors.hpp"
#include "negprob/mass.hpp"
#include "negprob/scenario.hpp"
#include "random.hpp"

using namespace negprob;

namespace {

Behavior hand_signalling_box() {
  // P(a=0|x=0) is 1 with y=0 and 1/2 with y=1.
  const Scenario sc = Scenario::bipartite(2, 2);
  std::vector<Rational> t(16, Rational(0));
  auto set = [&](int x, int y, int a, int b, Rational v) { t[(2 * x + y) * 4 + 2 * a + b] = v; };
  set(0, 0, 0, 0, 1);
  set(0, 1, 0, 0, Rational(1, 2));
  set(0, 1, 1, 0, Rational(1, 2));
  set(1, 0, 0, 0, 1);
  set(1, 1, 0, 0, Rational(1, 2));
  set(1, 1, 1, 0, Rational(1, 2));
  return Behavior(sc, t);
}

}  // namespace

TEST(Scenario, AtomCountsAndLabels) {
  EXPECT_EQ(Scenario::bipartite(2, 2).atom_count(), 16u);
  EXPECT_EQ(Scenario::bipartite(3, 3).atom_count(), 64u);
  EXPECT_EQ(Scenario::binary(3, 2).atom_count(), 64u);
  EXPECT_EQ(Scenario::bipartite(2, 3, 2, 3).atom_count(), 108u);
  EXPECT_EQ(Scenario::bipartite(2, 2).label(), "2222");
  EXPECT_EQ(Scenario::bipartite(2, 2).spec_string(), "2,2;2,2");
  EXPECT_EQ(parse_scenario_spec("3,2;3,2"), Scenario::bipartite(3, 3));
}

TEST(Scenario, RejectsInvalidShapes) {
  EXPECT_THROW(Scenario({}), ValidationError);
  EXPECT_THROW(Scenario({{0, 2}}), ValidationError);
  EXPECT_THROW(Scenario({{2, 1}}), ValidationError);
  EXPECT_THROW(Scenario::bipartite(17, 17), SizeError);
  EXPECT_THROW(parse_scenario_spec("2;2"), ValidationError);
}

TEST(Scenario, AtomIndexIsFirstSlotMostSignificant) {
  const Scenario sc = Scenario::bipartite(2, 2);
  // a0 a1 b0 b1 = 0 1 1 0
  const int assignment[4] = {0, 1, 1, 0};
  EXPECT_EQ(sc.atom_index(assignment), 6u);
  EXPECT_EQ(sc.outcome(6, 0, 1), 1);
  EXPECT_EQ(sc.outcome(6, 1, 0), 1);
  EXPECT_EQ(sc.outcome(6, 0, 0), 0);
}

TEST(Scenario, AtomIndexRoundTrip) {
  for (const auto& sc : {Scenario::bipartite(2, 2), Scenario::bipartite(3, 2, 3, 2), Scenario::binary(3, 2)})
    for (std::uint64_t i = 0; i < sc.atom_count(); ++i) EXPECT_EQ(sc.atom_index(sc.assignment(i)), i);
}

TEST(MarginalMap, Shape2222) {
  const auto map = marginal_map(Scenario::bipartite(2, 2));
  EXPECT_EQ(map.rows.size(), 16u);
  EXPECT_EQ(map.columns, 16u);
  for (const auto& row : map.rows) EXPECT_EQ(row.size(), 4u);
  // row (x=0, y=0, a=0, b=0): a0 = 0 and b0 = 0
  const std::vector<std::uint32_t> expected = {0, 1, 4, 5};
  EXPECT_EQ(map.rows[0], expected);
  EXPECT_EQ(rank(map), 9u);
}

TEST(MarginalMap, RowSumsMatchFreeSettingCount) {
  for (const auto& sc : {Scenario::bipartite(2, 2), Scenario::bipartite(3, 3), Scenario::bipartite(2, 3, 3, 2),
                         Scenario::binary(3, 2), Scenario({{1, 3}, {2, 2}})}) {
    const auto map = marginal_map(sc);
    for (std::size_t r = 0; r < map.rows.size(); ++r)
      EXPECT_EQ(map.rows[r].size(), sc.atom_count() / sc.joint_outcome_count());
  }
}

TEST(MarginalMap, EntriesFollowAssignment) {
  const Scenario sc = Scenario::bipartite(2, 3, 3, 2);
  const auto map = marginal_map(sc);
  for (std::size_t s = 0; s < sc.joint_setting_count(); ++s)
    for (std::size_t o = 0; o < sc.joint_outcome_count(); ++o) {
      const auto settings = sc.joint_setting(s);
      const auto outcomes = sc.joint_outcome(o);
      std::vector<std::uint32_t> expected;
      for (std::uint64_t a = 0; a < sc.atom_count(); ++a)
        if (sc.outcome(a, 0, settings[0]) == outcomes[0] && sc.outcome(a, 1, settings[1]) == outcomes[1])
          expected.push_back(static_cast<std::uint32_t>(a));
      EXPECT_EQ(map.rows[s * sc.joint_outcome_count() + o], expected);
    }
}

TEST(Marginals, UniformAndPointMass) {
  const Scenario sc = Scenario::bipartite(2, 2);
  const QuasiDistribution flat(sc, std::vector<Rational>(16, Rational(1, 16)));
  const Behavior m = marginals(flat);
  for (const auto& v : m.table()) EXPECT_EQ(v, Rational(1, 4));
  for (std::uint64_t a = 0; a < 16; ++a) EXPECT_EQ(marginals(point_mass(sc, a)), deterministic(sc, a));
}

TEST(Marginals, IsotropicAtOneIsPrBox) {
  EXPECT_EQ(marginals(isotropic(IsotropicParam(1)).jqpd), pr_box());
}

TEST(Marginals, AlwaysNoSignallingAndNormalized) {
  std::mt19937_64 rng(11);
  for (const auto& sc : {Scenario::bipartite(2, 2), Scenario::bipartite(3, 3), Scenario::binary(3, 2),
                         Scenario::bipartite(2, 3, 3, 2)})
    for (int i = 0; i < 20; ++i) {
      const Behavior b = marginals(testing_support::random_jqpd(sc, rng));
      EXPECT_TRUE(no_signalling_report(b).satisfied);
      EXPECT_EQ(no_signalling_report(b).max_discrepancy, 0);
    }
}

TEST(NoSignalling, Examples) {
  EXPECT_EQ(no_signalling_report(pr_box()).max_discrepancy, 0);
  EXPECT_TRUE(no_signalling_report(deterministic(Scenario::bipartite(2, 2), 9)).satisfied);
  const auto r = no_signalling_report(hand_signalling_box());
  EXPECT_FALSE(r.satisfied);
  EXPECT_EQ(r.max_discrepancy, Rational(1, 2));
  EXPECT_FALSE(r.worst_context.empty());
}

TEST(NoSignalling, TripartiteCoversPairs) {
  // Perturb one tripartite context so only a two-party marginal changes.
  const Scenario sc = Scenario::binary(3, 2);
  std::mt19937_64 rng(5);
  const Behavior b = marginals(testing_support::random_jqpd(sc, rng));
  auto t = b.table();
  // outcomes (0,0,0) -> (0,0,1) and (0,1,1) -> (0,1,0) under settings (0,0,0):
  // every single-party marginal is unchanged, pair (B, B') is not.
  const Rational d(1, 7);
  const int o000[3] = {0, 0, 0}, o001[3] = {0, 0, 1}, o011[3] = {0, 1, 1}, o010[3] = {0, 1, 0};
  const int s000[3] = {0, 0, 0};
  const auto at = [&](const int* o) { return sc.joint_setting_index(s000) * sc.joint_outcome_count() + sc.joint_outcome_index(std::span<const int>(o, 3)); };
  t[at(o000)] -= d;
  t[at(o001)] += d;
  t[at(o011)] -= d;
  t[at(o010)] += d;
  const Behavior p(sc, t);
  const auto r = no_signalling_report(p);
  EXPECT_FALSE(r.satisfied);
  EXPECT_EQ(r.max_discrepancy, d);
}

TEST(Properness, Examples) {
  EXPECT_TRUE(is_proper(pr_box()));
  EXPECT_FALSE(is_proper(marginals(cloned_isotropic(IsotropicParam(Rational(3, 4))))));
  EXPECT_TRUE(is_proper(marginals(cloned_isotropic(IsotropicParam(Rational(1, 2))))));
}

TEST(QuasiDistribution, MassAtLeastOneWithEqualityIffProper) {
  std::mt19937_64 rng(3);
  const Scenario sc = Scenario::bipartite(2, 2);
  for (int i = 0; i < 200; ++i) {
    const auto p = testing_support::random_jqpd(sc, rng);
    EXPECT_GE(p.mass(), 1);
    EXPECT_EQ(p.mass() == 1, p.is_proper());
  }
  EXPECT_THROW(QuasiDistribution(sc, std::vector<Rational>(16, Rational(1, 15))), ValidationError);
}

TEST(Behavior, RejectsUnnormalizedBlocks) {
  std::vector<Rational> t(16, Rational(1, 4));
  t[0] = Rational(1, 2);
  EXPECT_THROW(Behavior(Scenario::bipartite(2, 2), t), ValidationError);
  EXPECT_THROW(Behavior(Scenario::bipartite(2, 2), std::vector<Rational>(15, Rational(1, 4))), ValidationError);
}

TEST(Behavior, SubMarginal) {
  const Behavior b = pr_box();
  const std::size_t alice[1] = {0};
  const int x0[1] = {0}, a0[1] = {0};
  const int others[2] = {0, 1};
  EXPECT_EQ(sub_marginal(b, alice, x0, a0, others), Rational(1, 2));
}
