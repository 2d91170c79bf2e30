#include "airnet/episode_io.hpp"
#include "airnet/errors.hpp"
#include "airnet/sim.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace airnet;

namespace {

WorldConfig demo_config(std::uint64_t seed) {
  WorldConfig c;
  c.seed = seed;
  return c;
}

std::size_t argmax_raw(const WorldState &s) {
  const auto inputs = valuation_breakdown(s);
  std::size_t best = 0;
  for (std::size_t i = 1; i < inputs.size(); ++i)
    if (inputs[i].raw_valuation > inputs[best].raw_valuation)
      best = i;
  return best;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST(World, DeterministicForSeed) {
  const WorldState a = generate_world(demo_config(3));
  const WorldState b = generate_world(demo_config(3));
  EXPECT_EQ(a.devices, b.devices);
  EXPECT_EQ(a.last_collected, b.last_collected);
  EXPECT_NE(generate_world(demo_config(4)).devices, a.devices);
}

TEST(World, LayoutWithinArea) {
  WorldConfig c = demo_config(5);
  c.devices = 12;
  c.area_width = 300.0;
  c.area_height = 100.0;
  const WorldState s = generate_world(c);
  ASSERT_EQ(s.devices.size(), 12u);
  EXPECT_EQ(s.uav_position, (Position{150.0, 50.0}));
  EXPECT_EQ(s.battery, c.battery);
  for (const Device &d : s.devices) {
    EXPECT_GE(d.position.x, 0.0);
    EXPECT_LE(d.position.x, 300.0);
    EXPECT_GE(d.position.y, 0.0);
    EXPECT_LE(d.position.y, 100.0);
    EXPECT_EQ(d.pile.size(), c.pile_size);
    EXPECT_EQ(d.pile.rows(), c.image_rows);
    for (const GrayImage &img : d.pile.images())
      for (double px : img.pixels) {
        EXPECT_GE(px, 0.0);
        EXPECT_LE(px, 1.0);
      }
  }
}

TEST(World, RejectsBadConfig) {
  WorldConfig c;
  c.devices = 1;
  EXPECT_THROW(generate_world(c), InvalidConfig);
  c = WorldConfig{};
  c.battery = -1.0;
  EXPECT_THROW(generate_world(c), InvalidConfig);
}

TEST(Capture, SuccessiveCapturesDiffer) {
  const WorldConfig c = demo_config(6);
  const Position p{400.0, 400.0};
  EXPECT_EQ(capture_pile(c, p, 1, 0), capture_pile(c, p, 1, 0));
  EXPECT_NE(capture_pile(c, p, 1, 0), capture_pile(c, p, 1, 1));
}

TEST(Valuations, NormalizedOntoDistribution) {
  const WorldState s = generate_world(demo_config(7));
  const ValuationProfile v = form_valuations(s);
  EXPECT_EQ(*std::min_element(v.values.begin(), v.values.end()), 0.5);
  EXPECT_EQ(*std::max_element(v.values.begin(), v.values.end()), 1.0);
}

TEST(Valuations, DegenerateProfileFallsBackToMidpoint) {
  WorldState s = generate_world(demo_config(8));
  for (Device &d : s.devices) {
    d.position = s.uav_position;
  }
  const ValuationProfile v = form_valuations(s);
  for (double x : v.values)
    EXPECT_EQ(x, 0.75);
}

TEST(Step, MovesToWinnerAndDrainsBattery) {
  const WorldState s = generate_world(demo_config(9));
  const std::size_t expected = argmax_raw(s);
  const StepResult r = step(s, SecondPrice{});
  ASSERT_TRUE(r.record.outcome.winner);
  EXPECT_EQ(*r.record.outcome.winner, expected);
  const Position target = s.devices[expected].position;
  EXPECT_EQ(r.state.uav_position, target);
  EXPECT_EQ(r.record.distance_flown, distance(s.uav_position, target));
  EXPECT_EQ(r.state.battery, s.battery - r.record.distance_flown);
  EXPECT_EQ(r.state.last_collected, s.devices[expected].pile);
  EXPECT_NE(r.state.devices[expected].pile, s.devices[expected].pile);
  EXPECT_EQ(r.state.round, 1u);
  EXPECT_EQ(r.record.mechanism, MechanismKind::Spa);
}

TEST(Step, ExhaustedBatteryIsAnError) {
  WorldConfig c = demo_config(10);
  c.battery = 0.0;
  const WorldState s = generate_world(c);
  EXPECT_THROW(step(s, SecondPrice{}), EpisodeExhausted);
}

TEST(Step, LearnedAuctionChecksBidderCount) {
  const WorldState s = generate_world(demo_config(11));
  const LearnedAuction wrong{MonotoneNetParams::affine(3, 2.0, -1.0)};
  EXPECT_THROW(step(s, wrong), InvalidInput);
}

TEST(Episode, InvariantsOverRandomWorlds) {
  for (std::uint64_t seed = 100; seed < 200; ++seed) {
    WorldConfig c = demo_config(seed);
    c.battery = 1500.0 + static_cast<double>(seed % 7) * 300.0;
    WorldState s = generate_world(c);
    double battery = s.battery, flown = 0.0;
    for (std::size_t round = 0; round < 200 && s.battery > 0.0; ++round) {
      const std::size_t expected = argmax_raw(s);
      StepResult r = step(s, SecondPrice{});
      ASSERT_EQ(*r.record.outcome.winner, expected) << "seed " << seed;
      ASSERT_LE(r.state.battery, battery);
      ASSERT_GE(r.state.battery, 0.0);
      flown += r.record.distance_flown;
      battery = r.state.battery;
      s = std::move(r.state);
    }
    EXPECT_LE(flown, c.battery + 1e-9);
  }
}

TEST(Episode, StopsWhenBatteryRunsOut) {
  WorldConfig c = demo_config(12);
  c.battery = 700.0;
  const auto log = run_episode(generate_world(c), SecondPrice{}, 1000);
  ASSERT_FALSE(log.empty());
  EXPECT_LT(log.size(), 1000u);
  EXPECT_EQ(log.back().battery, 0.0);
  for (std::size_t i = 0; i + 1 < log.size(); ++i)
    EXPECT_GT(log[i].battery, 0.0);
}

TEST(Episode, RespectsRoundLimit) {
  const auto log = run_episode(generate_world(demo_config(13)), SecondPrice{}, 3);
  EXPECT_EQ(log.size(), 3u);
  EXPECT_EQ(log.back().round, 3u);
}

TEST(Episode, AffineLearnedAuctionMatchesSecondPriceOnHalfUnitSupport) {
  // With phi(b) = 2b - 1 on U[0.5, 1] the reserve sits at the support floor,
  // so the learned mechanism picks the same winners as SPA.
  const WorldState s = generate_world(demo_config(14));
  const auto spa = run_episode(s, SecondPrice{}, 20);
  const auto dla =
      run_episode(s, LearnedAuction{MonotoneNetParams::affine(5, 2.0, -1.0)}, 20);
  ASSERT_EQ(spa.size(), dla.size());
  for (std::size_t i = 0; i < spa.size(); ++i) {
    EXPECT_EQ(spa[i].outcome.winner, dla[i].outcome.winner);
    EXPECT_NEAR(spa[i].outcome.payment, dla[i].outcome.payment, 1e-12);
    EXPECT_EQ(spa[i].battery, dla[i].battery);
    EXPECT_EQ(dla[i].mechanism, MechanismKind::Dla);
  }
}

TEST(EventStream, RoundTrips) {
  const auto log = run_episode(generate_world(demo_config(15)), SecondPrice{}, 50);
  std::stringstream ss;
  write_event_stream(ss, log);
  const auto back = read_event_stream(ss);
  ASSERT_EQ(back.size(), log.size());
  for (std::size_t i = 0; i < log.size(); ++i) {
    EXPECT_EQ(back[i].round, log[i].round);
    EXPECT_EQ(back[i].valuations.values, log[i].valuations.values);
    EXPECT_EQ(back[i].outcome.winner, log[i].outcome.winner);
    EXPECT_EQ(back[i].outcome.payment, log[i].outcome.payment);
    EXPECT_EQ(back[i].uav_position, log[i].uav_position);
    EXPECT_EQ(back[i].battery, log[i].battery);
    EXPECT_EQ(back[i].distance_flown, log[i].distance_flown);
  }
}

TEST(EventStream, RejectsGarbage) {
  std::istringstream in("{\"round\": 1}\nnot json\n");
  EXPECT_THROW(read_event_stream(in), InvalidInput);
}

TEST(EpisodeCsv, Header) {
  std::ostringstream out;
  write_episode_csv(out, {});
  EXPECT_EQ(out.str(), "round,mechanism,winner,payment,revenue,uav_x,uav_y,"
                       "battery,distance_flown\n");
}

TEST(EpisodeCsv, MatchesGoldenDemoEpisode) {
  const auto log = run_episode(generate_world(demo_config(2024)), SecondPrice{}, 30);
  std::ostringstream out;
  write_episode_csv(out, log);
  EXPECT_EQ(out.str(), read_file(AIRNET_TEST_DATA "/golden_episode_spa.csv"));
}
