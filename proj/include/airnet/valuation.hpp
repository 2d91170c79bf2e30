#pragma once

#include "airnet/auction.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace airnet {

struct Position {
  double x = 0.0; // meters
  double y = 0.0; // meters

  friend bool operator==(const Position &, const Position &) = default;
};

/// Row-major grayscale image, pixels in [0, 1].
struct GrayImage {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> pixels;

  GrayImage() = default;
  GrayImage(std::size_t rows, std::size_t cols, double fill = 0.0);
  GrayImage(std::size_t rows, std::size_t cols, std::vector<double> pixels);

  double operator()(std::size_t r, std::size_t c) const {
    return pixels[r * cols + c];
  }
  double &operator()(std::size_t r, std::size_t c) {
    return pixels[r * cols + c];
  }

  friend bool operator==(const GrayImage &, const GrayImage &) = default;
};

/// Non-empty, equally sized images captured by one device.
class ImagePile {
public:
  ImagePile() = default;
  explicit ImagePile(std::vector<GrayImage> images);

  const std::vector<GrayImage> &images() const { return images_; }
  std::size_t size() const { return images_.size(); }
  bool empty() const { return images_.empty(); }
  std::size_t rows() const { return images_.front().rows; }
  std::size_t cols() const { return images_.front().cols; }

  friend bool operator==(const ImagePile &, const ImagePile &) = default;

private:
  std::vector<GrayImage> images_;
};

enum class SimilarityAggregation { Mean, Min };

/// Literal: v = s * d. Proximity: v = s / (1 + d).
enum class ValuationRule { Literal, Proximity };

struct ValuationInputs {
  double distance = 0.0;
  double similarity = 0.0;
  double raw_valuation = 0.0;
};

double distance(const Position &uav, const Position &device);

/// Mean squared pixel difference. Throws InvalidInput on a size mismatch.
double pair_mse(const GrayImage &a, const GrayImage &b);

/// Aggregates pair_mse over every (current, previous) image pair.
double pile_similarity(const ImagePile &current, const ImagePile &previous,
                       SimilarityAggregation aggregation =
                           SimilarityAggregation::Mean);

double raw_valuation(double similarity, double distance,
                     ValuationRule rule = ValuationRule::Literal);

ValuationInputs valuation_inputs(const Position &uav, const Position &device,
                                 const ImagePile &current,
                                 const ImagePile &previous,
                                 SimilarityAggregation aggregation,
                                 ValuationRule rule);

/// Affine min-max map of `raw` onto [dist.lower, dist.upper].
/// Throws DegenerateProfile when every raw value is equal.
ValuationProfile normalize_profile(std::span<const double> raw,
                                   const ValuationDistribution &dist);

} // namespace airnet
