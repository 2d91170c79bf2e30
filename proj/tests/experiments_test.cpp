#include "airnet/errors.hpp"
#include "airnet/experiments.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>

using namespace airnet;

namespace {

const ValuationDistribution kU01 = ValuationDistribution::uniform(0.0, 1.0);
const ValuationDistribution kUHalf = ValuationDistribution::uniform(0.5, 1.0);

// SPA revenue is the second-highest value; with phi(b) = b the learned
// mechanism reduces to SPA without reserve.
const MonotoneNetParams kIdentity = MonotoneNetParams::affine(5, 1.0, 0.0);

} // namespace

TEST(RevenueGap, IdentityNetworkHasZeroGap) {
  const auto records = revenue_gap(kIdentity, kU01, 300, 1);
  ASSERT_EQ(records.size(), 300u);
  for (const ExperimentRecord &r : records)
    EXPECT_NEAR(r.gap, 0.0, 1e-12);
}

TEST(RevenueGap, CasesAreIndependentOfOrderAndThreads) {
  const MonotoneNetParams p = MonotoneNetParams::affine(5, 2.0, -1.0);
  const auto serial = revenue_gap(p, kU01, 257, 3, 1);
  const auto par = revenue_gap(p, kU01, 257, 3, 4);
  ASSERT_EQ(serial.size(), par.size());
  for (std::size_t c = 0; c < serial.size(); ++c) {
    EXPECT_EQ(serial[c].case_index, c);
    EXPECT_EQ(serial[c].gap, par[c].gap);
    EXPECT_EQ(serial[c].dla_revenue, par[c].dla_revenue);
  }
}

TEST(RevenueGap, MyersonNetworkGapsOnUnitUniform) {
  // Reserve 0.5 on U[0,1]: gap is positive when the runner-up is under the
  // reserve and the winner above it, negative when the winner is under it.
  const MonotoneNetParams p = MonotoneNetParams::affine(5, 2.0, -1.0);
  for (const ExperimentRecord &r : revenue_gap(p, kU01, 500, 4)) {
    const ValuationProfile v = case_profile(kU01, 5, 4, r.case_index);
    std::vector<double> s = v.values;
    std::sort(s.begin(), s.end(), std::greater<>());
    const double expected = s[0] < 0.5 ? -s[1] : (s[1] < 0.5 ? 0.5 - s[1] : 0.0);
    EXPECT_NEAR(r.gap, expected, 1e-12);
  }
}

TEST(RevenueGap, RejectsZeroCases) {
  EXPECT_THROW(revenue_gap(kIdentity, kU01, 0, 1), InvalidInput);
}

TEST(SortByGap, AscendingAndStable) {
  std::vector<ExperimentRecord> rs{{0, 0, 0, 0.2}, {1, 0, 0, -0.1},
                                   {2, 0, 0, 0.2}, {3, 0, 0, 0.0}};
  sort_by_gap(rs);
  EXPECT_EQ(rs[0].case_index, 1u);
  EXPECT_EQ(rs[1].case_index, 3u);
  EXPECT_EQ(rs[2].case_index, 0u);
  EXPECT_EQ(rs[3].case_index, 2u);
}

TEST(Summarize, Means) {
  const std::vector<ExperimentRecord> rs{{0, 0.6, 0.5, 0.1}, {1, 0.4, 0.5, -0.1},
                                         {2, 0.8, 0.5, 0.3}};
  const GapSummary s = summarize(rs);
  EXPECT_DOUBLE_EQ(s.mean_dla, 0.6);
  EXPECT_DOUBLE_EQ(s.mean_spa, 0.5);
  EXPECT_DOUBLE_EQ(s.mean_gap, 0.1);
  EXPECT_DOUBLE_EQ(s.positive_fraction, 2.0 / 3.0);
}

TEST(GapCsv, OneRowPerCaseSorted) {
  auto rs = revenue_gap(MonotoneNetParams::affine(5, 2.0, -1.0), kU01, 40, 5);
  sort_by_gap(rs);
  std::ostringstream out;
  write_gap_csv(out, rs);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "rank,gap,dla_revenue,spa_revenue");
  std::size_t rows = 0;
  double prev = -1e300;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const double gap = std::strtod(line.c_str() + c1 + 1, nullptr);
    EXPECT_GE(gap, prev);
    prev = gap;
    ++rows;
  }
  EXPECT_EQ(rows, 40u);
}

TEST(GapSvg, WellFormedDocument) {
  auto rs = revenue_gap(kIdentity, kU01, 10, 6);
  std::ostringstream out;
  write_gap_svg(out, rs);
  const std::string svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(EvaluateRevenue, AffineNetworkMatchesMyerson) {
  const RevenueReport r =
      evaluate_revenue(MonotoneNetParams::affine(5, 2.0, -1.0), kU01, 20000, 7);
  EXPECT_NEAR(r.dla.mean, r.myerson.mean, 1e-12);
  EXPECT_NEAR(r.dla.stddev, r.myerson.stddev, 1e-12);
  EXPECT_NEAR(r.spa.mean, 4.0 / 6.0, 0.01);
  EXPECT_NEAR(r.myerson.mean, 129.0 / 192.0, 0.01);
}

TEST(EvaluateRevenue, HalfUnitSupportHasNoGap) {
  const RevenueReport r =
      evaluate_revenue(MonotoneNetParams::affine(5, 2.0, -1.0), kUHalf, 5000, 8);
  EXPECT_NEAR(r.dla.mean, r.spa.mean, 1e-12);
  EXPECT_EQ(r.myerson.mean, r.spa.mean);
}

TEST(EvaluateRevenue, ThreadsDoNotChangeReport) {
  const MonotoneNetParams p = MonotoneNetParams::affine(5, 1.5, -0.4);
  const RevenueReport a = evaluate_revenue(p, kU01, 3000, 9, 1);
  const RevenueReport b = evaluate_revenue(p, kU01, 3000, 9, 3);
  EXPECT_EQ(a.dla.mean, b.dla.mean);
  EXPECT_EQ(a.spa.stddev, b.spa.stddev);
}

TEST(ThreadsFromEnv, ParsesOrFallsBack) {
  ::setenv("MYERSON_AIRNET_THREADS", "4", 1);
  EXPECT_EQ(threads_from_env(), 4);
  ::setenv("MYERSON_AIRNET_THREADS", "four", 1);
  EXPECT_EQ(threads_from_env(), 0);
  ::unsetenv("MYERSON_AIRNET_THREADS");
  EXPECT_EQ(threads_from_env(), 0);
}
