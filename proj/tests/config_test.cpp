#include "airnet/config.hpp"
#include "airnet/errors.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace airnet;

TEST(ParseSettings, KeyValueLines) {
  std::istringstream in("# experiment\n\nkappa = 50\n  iterations=10  \n"
                        "optimizer = gd # trailing\n");
  const auto s = parse_settings(in);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], (Setting{"kappa", "50"}));
  EXPECT_EQ(s[1], (Setting{"iterations", "10"}));
  EXPECT_EQ(s[2].first, "optimizer");
}

TEST(ParseSettings, RejectsLineWithoutEquals) {
  std::istringstream in("kappa 50\n");
  EXPECT_THROW(parse_settings(in), InvalidConfig);
}

TEST(ApplySettings, UpdatesFields) {
  ExperimentConfig c;
  apply_settings(c, {{"kappa", "50"},
                     {"n_bidders", "3"},
                     {"optimizer", "gd"},
                     {"dist_lower", "0"},
                     {"seed", "17"},
                     {"world.devices", "7"},
                     {"world.uav_x", "10"},
                     {"valuation", "proximity"},
                     {"similarity", "min"}});
  EXPECT_EQ(c.net.kappa, 50.0);
  EXPECT_EQ(c.net.n_bidders, 3u);
  EXPECT_EQ(c.net.optimizer, Optimizer::GradientDescent);
  EXPECT_EQ(c.distribution.lower, 0.0);
  EXPECT_EQ(c.net.seed, 17u);
  EXPECT_EQ(c.world.seed, 17u);
  EXPECT_EQ(c.world.devices, 7u);
  EXPECT_EQ(c.world.start(), (Position{10.0, 500.0}));
  EXPECT_EQ(c.world.rule, ValuationRule::Proximity);
  EXPECT_EQ(c.world.aggregation, SimilarityAggregation::Min);
  EXPECT_NO_THROW(c.validate());
}

TEST(ApplySettings, RejectsUnknownKeysAndBadValues) {
  ExperimentConfig c;
  EXPECT_THROW(apply_setting(c, "no_such_key", "1"), InvalidConfig);
  EXPECT_THROW(apply_setting(c, "kappa", "fast"), InvalidConfig);
  EXPECT_THROW(apply_setting(c, "iterations", "-3"), InvalidConfig);
  EXPECT_THROW(apply_setting(c, "optimizer", "sgd"), InvalidConfig);
}

TEST(ExperimentConfig, DefaultsValidate) {
  const ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.net.n_bidders, 5u);
  EXPECT_EQ(c.net.groups, 5u);
  EXPECT_EQ(c.net.units, 3u);
  EXPECT_EQ(c.net.iterations, 500u);
  EXPECT_EQ(c.cases, 300u);
  EXPECT_EQ(c.distribution.lower, 0.5);
  EXPECT_EQ(c.distribution.upper, 1.0);
}

TEST(ExperimentConfig, ValidateRejectsBadDistribution) {
  ExperimentConfig c;
  apply_settings(c, {{"dist_lower", "1"}, {"dist_upper", "0.5"}});
  EXPECT_THROW(c.validate(), InvalidConfig);
}
