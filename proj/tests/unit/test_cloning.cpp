#include <gtest/gtest.h>

#include <algorithm>

#include "negprob/cloning.hpp"
#include "negprob/errors.hpp"

using namespace negprob;

TEST(Cloning, ObservableEvents) {
  const auto events = observable_events();
  EXPECT_EQ(events.size(), 12u + 48u + 64u);
  EXPECT_EQ(to_string(exhibited_event()), "a_0=0, b_0=1, b'_1=1");
  const auto uniform_clone = cloned_isotropic(IsotropicParam(0));
  for (const auto& e : events) {
    Rational expected = 1;
    for (std::size_t i = 0; i < e.parties.size(); ++i) expected /= 2;
    EXPECT_EQ(event_probability(uniform_clone, e), expected) << to_string(e);
  }
}

TEST(Cloning, ThreeQuarters) {
  const CloneReport r = clone_report(IsotropicParam(Rational(3, 4)));
  EXPECT_EQ(r.min_observable_marginal, Rational(-1, 16));
  EXPECT_EQ(r.exhibited_marginal, Rational(-1, 16));
  EXPECT_TRUE(r.exhibited_is_minimum);
  EXPECT_EQ(r.minimizers, 8u);
  EXPECT_FALSE(r.proper);
  EXPECT_TRUE(r.jqpd_exists);
  EXPECT_EQ(r.ns_discrepancy, 0);
  EXPECT_TRUE(r.pairs_match_isotropic);
  EXPECT_TRUE(r.xor_alice_independent);
}

TEST(Cloning, HalfIsProper) {
  const CloneReport r = clone_report(IsotropicParam(Rational(1, 2)));
  EXPECT_EQ(r.min_observable_marginal, 0);
  EXPECT_EQ(r.exhibited_marginal, 0);
  EXPECT_TRUE(r.proper);
}

TEST(Cloning, PairMarginalsAreIsotropic) {
  const IsotropicParam x(Rational(5, 8));
  const auto clone = cloned_isotropic(x);
  EXPECT_EQ(pair_marginal(clone, 1), isotropic(x).behavior);
  EXPECT_EQ(pair_marginal(clone, 2), isotropic(x).behavior);
  EXPECT_THROW(pair_marginal(clone, 0), ValidationError);
}

TEST(Cloning, Sweep) {
  const auto reports = clone_sweep(Rational(1, 16));
  ASSERT_EQ(reports.size(), 17u);
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    Rational x(static_cast<long>(k), 16);
    x.canonicalize();
    EXPECT_EQ(r.x, x);
    EXPECT_EQ(r.exhibited_marginal, (1 - 2 * r.x) / 8);
    EXPECT_EQ(r.proper, r.x <= Rational(1, 2)) << to_string(r.x);
    EXPECT_EQ(r.ns_discrepancy, 0);
    EXPECT_TRUE(r.jqpd_exists);
    EXPECT_TRUE(r.pairs_match_isotropic);
    if (r.x > Rational(1, 2)) {
      EXPECT_TRUE(r.exhibited_is_minimum);
      EXPECT_EQ(r.min_observable_marginal, r.exhibited_marginal);
    }
  }
  EXPECT_THROW(clone_sweep(Rational(3, 7)), ValidationError);
  const std::string csv = format_clone_csv(reports);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,min_marginal,min_event,exhibited,ns_discrepancy,jqpd_exists,proper");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 18);
}

TEST(Cloning, SignallingWitness) {
  const auto w = pr_clone_signalling_witness();
  EXPECT_EQ(w.hypothetical_tv, 1);
  EXPECT_EQ(w.from_jqpd_tv, 0);
  EXPECT_EQ(w.hypothetical[0][0][1][1], 0);
  EXPECT_EQ(w.hypothetical[1][0][1][1], 1);
  EXPECT_EQ(w.from_jqpd[0][0][1][1], Rational(1, 2));
  EXPECT_EQ(w.from_jqpd[1][0][1][1], Rational(1, 2));
}

TEST(Cloning, ReportText) {
  const std::string text = format_clone_report(clone_report(IsotropicParam(1)));
  EXPECT_NE(text.find("min_observable_marginal: -1/8\n"), std::string::npos) << text;
  EXPECT_NE(text.find("proper: false\n"), std::string::npos);
}
