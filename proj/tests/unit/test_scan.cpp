#include <gtest/gtest.h>

#include <sstream>

#include "negprob/boxes.hpp"
#include "negprob/errors.hpp"
#include "negprob/mass.hpp"
#include "negprob/scan.hpp"
#include "oracle.hpp"

using namespace negprob;

namespace {

using Counts = std::map<Rational, std::uint64_t>;

ScanOptions options(ScanMode mode, std::uint64_t count = 0, std::uint64_t seed = 1) {
  ScanOptions o;
  o.mode = mode;
  o.count = count;
  o.seed = seed;
  return o;
}

}  // namespace

TEST(Scan, FullN2AndN3) {
  const ScanResult r2 = nn22_scan(2, options(ScanMode::Full));
  EXPECT_EQ(r2.classification.counts, (Counts{{Rational(1), 8}, {Rational(2), 8}}));
  const ScanResult r3 = nn22_scan(3, options(ScanMode::Full));
  EXPECT_TRUE(r3.exhaustive);
  EXPECT_EQ(r3.items, 512u);
  EXPECT_EQ(r3.classification.counts, (Counts{{Rational(1), 32}, {Rational(2), 480}}));
  EXPECT_EQ(r3.classification.total, 512u);
}

TEST(Scan, SymmetryMatchesFullForSmallN) {
  for (int n = 2; n <= 3; ++n) {
    const ScanResult full = nn22_scan(n, options(ScanMode::Full));
    const ScanResult sym = nn22_scan(n, options(ScanMode::Symmetry));
    EXPECT_TRUE(sym.exhaustive);
    EXPECT_LT(sym.items, full.items);
    EXPECT_EQ(sym.classification.counts, full.classification.counts);
  }
}

TEST(Scan, SymmetryN4) {
  const ScanResult r = nn22_scan(4, options(ScanMode::Symmetry));
  EXPECT_EQ(r.classification.counts, (Counts{{Rational(1), 128},
                                             {Rational(2), 43904},
                                             {Rational(7, 3), 12288},
                                             {Rational(12, 5), 9216}}));
  EXPECT_EQ(r.classification.max_value(), Rational(12, 5));
  EXPECT_EQ(min_mass(correlation_box(r.argmax)).m_star, Rational(12, 5));
}

TEST(Scan, OnItemSeesEveryItemInOrder) {
  std::vector<std::uint64_t> seen;
  ScanOptions o = options(ScanMode::Full);
  o.jobs = 3;
  o.on_item = [&](const SignMatrix& m, std::uint64_t weight, const Rational& v) {
    EXPECT_EQ(weight, 1u);
    EXPECT_EQ(v == 1, m.rank_one());
    seen.push_back(m.bits());
  };
  nn22_scan(3, o);
  ASSERT_EQ(seen.size(), 512u);
  for (std::uint64_t i = 0; i < 512; ++i) EXPECT_EQ(seen[i], i);
}

TEST(Scan, JobsIndependent) {
  for (int n : {3, 5}) {
    ScanOptions a = options(ScanMode::Sample, 40, 9), b = a;
    b.jobs = 3;
    const ScanResult ra = nn22_scan(n, a), rb = nn22_scan(n, b);
    EXPECT_EQ(ra.classification.counts, rb.classification.counts);
    EXPECT_EQ(ra.argmax, rb.argmax);
    EXPECT_EQ(ra.screened, rb.screened);
    EXPECT_EQ(ra.uncertified, rb.uncertified);
  }
}

TEST(Scan, SampleIsSeeded) {
  const ScanResult a = nn22_scan(4, options(ScanMode::Sample, 30, 2));
  const ScanResult b = nn22_scan(4, options(ScanMode::Sample, 30, 2));
  EXPECT_EQ(a.classification.counts, b.classification.counts);
  EXPECT_EQ(a.classification.total, 30u);
  EXPECT_FALSE(a.exhaustive);
}

TEST(Scan, CertifyAllValuesAreDualCertified) {
  ScanOptions o = options(ScanMode::Sample, 6, 17);
  o.certify = Certify::All;
  const MarginalSystem sys(Scenario::bipartite(5, 5));
  int checked = 0;
  o.on_item = [&](const SignMatrix& m, std::uint64_t, const Rational& v) {
    const auto rhs = sys.rhs(correlation_box(m));
    const L1Result sol = solve_l1(sys, rhs, sys.product_basis(), L1Pricing::Dantzig);
    EXPECT_EQ(sol.objective, v) << m.to_string();
    EXPECT_TRUE(oracle::certify_l1(sys, rhs, sol)) << m.to_string();
    ++checked;
  };
  const ScanResult r = nn22_scan(5, o);
  EXPECT_EQ(checked, 6);
  EXPECT_EQ(r.uncertified, 0u);
  EXPECT_EQ(r.screened, 0u);
  EXPECT_EQ(r.classification.total, 6u);
}

TEST(Scan, MaximaPolicyAccountsForEveryItem) {
  ScanOptions o = options(ScanMode::Symmetry, 30, 4);
  const ScanResult r = nn22_scan(6, o);
  EXPECT_EQ(r.classification.total + r.uncertified, r.items);
  EXPECT_LE(r.uncertified_max, r.classification.max_value().get_d() + 1e-7);
  EXPECT_GE(r.classification.max_value(), Rational(5, 2));
  for (const auto& [v, c] : r.classification.counts) EXPECT_LE(v, 6);
}

TEST(Scan, CheckpointRoundTripAndResume) {
  std::vector<ScanCheckpoint> checkpoints;
  ScanOptions o = options(ScanMode::Full);
  o.checkpoint_every = 100;
  o.on_checkpoint = [&](const ScanCheckpoint& c) { checkpoints.push_back(c); };
  const ScanResult full = nn22_scan(3, o);
  ASSERT_GE(checkpoints.size(), 3u);

  std::stringstream s;
  write_checkpoint(s, checkpoints[1]);
  const ScanCheckpoint back = read_checkpoint(s);
  EXPECT_EQ(back.cursor, checkpoints[1].cursor);
  EXPECT_EQ(back.counts, checkpoints[1].counts);
  EXPECT_EQ(back.best, checkpoints[1].best);
  EXPECT_EQ(back.total_items, 512u);

  ScanOptions r = options(ScanMode::Full);
  r.resume = back;
  const ScanResult resumed = nn22_scan(3, r);
  EXPECT_EQ(resumed.classification.counts, full.classification.counts);
  EXPECT_EQ(resumed.argmax, full.argmax);

  ScanOptions wrong = options(ScanMode::Full);
  wrong.resume = back;
  EXPECT_THROW(nn22_scan(2, wrong), ValidationError);
}

TEST(Scan, CheckpointParseErrors) {
  std::istringstream bad("nonsense\n");
  EXPECT_THROW(read_checkpoint(bad), ParseError);
  std::istringstream no_cursor("class_mass_num,class_mass_den,count\n1,1,4\n");
  EXPECT_THROW(read_checkpoint(no_cursor), ParseError);
}

TEST(Scan, CsvFormat) {
  const Counts c{{Rational(1), 128}, {Rational(7, 3), 12}};
  EXPECT_EQ(format_scan_csv(c), "class_mass_num,class_mass_den,count\n1,1,128\n7,3,12\n");
  EXPECT_EQ(format_scan_csv(c, 3), "class_mass_num,class_mass_den,count,decimal\n1,1,128,1.000\n7,3,12,2.333\n");
}

TEST(Scan, Errors) {
  EXPECT_THROW(nn22_scan(5, options(ScanMode::Full)), SizeError);
  EXPECT_THROW(nn22_scan(9, options(ScanMode::Sample, 1)), ValidationError);
  EXPECT_THROW(nn22_scan(3, options(ScanMode::Sample, 0)), ValidationError);
  EXPECT_THROW(nn22_scan(5, options(ScanMode::Symmetry, 0)), ValidationError);
  EXPECT_THROW(parse_scan_mode("everything"), ValidationError);
  EXPECT_EQ(parse_scan_mode(to_string(ScanMode::Symmetry)), ScanMode::Symmetry);
}
