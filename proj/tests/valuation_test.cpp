#include "airnet/errors.hpp"
#include "airnet/valuation.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace airnet;
using airnet::testing::naive_mse;
using airnet::testing::naive_pile_mean;
using airnet::testing::random_image;

namespace {

ImagePile random_pile(std::mt19937_64 &rng, std::size_t size, std::size_t rows,
                      std::size_t cols) {
  std::vector<GrayImage> images;
  for (std::size_t i = 0; i < size; ++i)
    images.push_back(random_image(rng, rows, cols));
  return ImagePile(std::move(images));
}

const ValuationDistribution kUHalf = ValuationDistribution::uniform(0.5, 1.0);

} // namespace

TEST(Distance, Euclidean) {
  EXPECT_EQ(distance({0.0, 0.0}, {3.0, 4.0}), 5.0);
  EXPECT_EQ(distance({1.0, 1.0}, {1.0, 1.0}), 0.0);
}

TEST(PairMse, HandValues) {
  const GrayImage a(2, 2, std::vector<double>{0.0, 0.5, 1.0, 0.25});
  const GrayImage b(2, 2, std::vector<double>{0.0, 0.0, 0.5, 0.25});
  EXPECT_DOUBLE_EQ(pair_mse(a, b), (0.25 + 0.25) / 4.0);
  EXPECT_EQ(pair_mse(a, a), 0.0);
  EXPECT_THROW(pair_mse(a, GrayImage(2, 3)), InvalidInput);
}

TEST(PairMse, MatchesBruteForce) {
  std::mt19937_64 rng(1);
  for (int s = 0; s < 50; ++s) {
    const GrayImage a = random_image(rng, 5, 7);
    const GrayImage b = random_image(rng, 5, 7);
    EXPECT_NEAR(pair_mse(a, b), naive_mse(a, b), 1e-15);
  }
}

TEST(PileSimilarity, MeanMatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (int s = 0; s < 20; ++s) {
    const ImagePile cur = random_pile(rng, 1 + s % 4, 6, 6);
    const ImagePile prev = random_pile(rng, 1 + (s / 4) % 3, 6, 6);
    EXPECT_NEAR(pile_similarity(cur, prev, SimilarityAggregation::Mean),
                naive_pile_mean(cur, prev), 1e-14);
  }
}

TEST(PileSimilarity, MinIsSmallestPair) {
  const GrayImage zero(1, 2, 0.0), half(1, 2, 0.5), one(1, 2, 1.0);
  const ImagePile cur({zero, one});
  const ImagePile prev({half});
  EXPECT_EQ(pile_similarity(cur, prev, SimilarityAggregation::Min), 0.25);
  EXPECT_EQ(pile_similarity(cur, prev, SimilarityAggregation::Mean), 0.25);
  const ImagePile prev2({half, one});
  EXPECT_EQ(pile_similarity(cur, prev2, SimilarityAggregation::Min), 0.0);
  EXPECT_EQ(pile_similarity(cur, prev2, SimilarityAggregation::Mean),
            (0.25 + 1.0 + 0.25 + 0.0) / 4.0);
}

TEST(PileSimilarity, RejectsMismatchedPiles) {
  const ImagePile a({GrayImage(2, 2)});
  const ImagePile b({GrayImage(3, 2)});
  EXPECT_THROW(pile_similarity(a, b), InvalidInput);
  EXPECT_THROW(ImagePile(std::vector<GrayImage>{}), InvalidInput);
  EXPECT_THROW(ImagePile({GrayImage(2, 2), GrayImage(2, 3)}), InvalidInput);
}

TEST(RawValuation, Rules) {
  EXPECT_EQ(raw_valuation(0.2, 10.0, ValuationRule::Literal), 2.0);
  EXPECT_EQ(raw_valuation(0.2, 0.0, ValuationRule::Literal), 0.0);
  EXPECT_DOUBLE_EQ(raw_valuation(0.2, 3.0, ValuationRule::Proximity), 0.05);
  EXPECT_THROW(raw_valuation(-0.1, 1.0), InvalidInput);
}

TEST(RawValuation, LiteralMonotoneInBothArguments) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 1000; ++s) {
    const double sim = u(rng), d = 1000.0 * u(rng);
    const double ds = 0.01 * u(rng) + 1e-6, dd = u(rng) + 1e-6;
    EXPECT_GE(raw_valuation(sim + ds, d), raw_valuation(sim, d));
    EXPECT_GE(raw_valuation(sim, d + dd), raw_valuation(sim, d));
  }
}

TEST(ValuationInputs, CombinesParts) {
  const ImagePile cur({GrayImage(2, 2, 1.0)});
  const ImagePile prev({GrayImage(2, 2, 0.5)});
  const ValuationInputs in =
      valuation_inputs({0.0, 0.0}, {6.0, 8.0}, cur, prev,
                       SimilarityAggregation::Mean, ValuationRule::Literal);
  EXPECT_EQ(in.distance, 10.0);
  EXPECT_EQ(in.similarity, 0.25);
  EXPECT_EQ(in.raw_valuation, 2.5);
}

TEST(NormalizeProfile, EndpointsExact) {
  const std::vector<double> raw{3.0, 1.0, 2.0, 5.0};
  const ValuationProfile p = normalize_profile(raw, kUHalf);
  EXPECT_EQ(p.values[1], 0.5);
  EXPECT_EQ(p.values[3], 1.0);
  EXPECT_DOUBLE_EQ(p.values[0], 0.75);
  EXPECT_DOUBLE_EQ(p.values[2], 0.625);
}

TEST(NormalizeProfile, PropertiesOnRandomInputs) {
  std::mt19937_64 rng(4);
  std::lognormal_distribution<double> raw_dist(0.0, 3.0);
  for (int s = 0; s < 1000; ++s) {
    std::vector<double> raw(5);
    for (double &r : raw)
      r = raw_dist(rng);
    const ValuationProfile p = normalize_profile(raw, kUHalf);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      ASSERT_GE(p.values[i], 0.5);
      ASSERT_LE(p.values[i], 1.0);
      for (std::size_t j = 0; j < raw.size(); ++j)
        if (raw[i] < raw[j])
          ASSERT_LE(p.values[i], p.values[j]);
    }
    EXPECT_EQ(*std::min_element(p.values.begin(), p.values.end()), 0.5);
    EXPECT_EQ(*std::max_element(p.values.begin(), p.values.end()), 1.0);
  }
}

TEST(NormalizeProfile, DegenerateInputs) {
  EXPECT_THROW(normalize_profile(std::vector<double>{2.0, 2.0, 2.0}, kUHalf),
               DegenerateProfile);
  EXPECT_THROW(normalize_profile(std::vector<double>{2.0}, kUHalf),
               InvalidInput);
}
