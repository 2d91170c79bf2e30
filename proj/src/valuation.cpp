#include "airnet/valuation.hpp"

#include "airnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace airnet {

GrayImage::GrayImage(std::size_t rows, std::size_t cols, double fill)
    : rows(rows), cols(cols), pixels(rows * cols, fill) {}

GrayImage::GrayImage(std::size_t rows, std::size_t cols,
                     std::vector<double> pixels)
    : rows(rows), cols(cols), pixels(std::move(pixels)) {
  if (this->pixels.size() != rows * cols)
    throw InvalidInput("image pixel count does not match rows * cols");
}

ImagePile::ImagePile(std::vector<GrayImage> images)
    : images_(std::move(images)) {
  if (images_.empty())
    throw InvalidInput("image pile must not be empty");
  for (const GrayImage &img : images_) {
    if (img.rows != images_.front().rows || img.cols != images_.front().cols)
      throw InvalidInput("all images in a pile must share dimensions");
    if (img.rows == 0 || img.cols == 0)
      throw InvalidInput("images must have at least one pixel");
  }
}

double distance(const Position &uav, const Position &device) {
  return std::hypot(uav.x - device.x, uav.y - device.y);
}

double pair_mse(const GrayImage &a, const GrayImage &b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw InvalidInput("pair_mse: image dimensions differ");
  if (a.pixels.empty())
    throw InvalidInput("pair_mse: empty image");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = a.pixels[i] - b.pixels[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.pixels.size());
}

double pile_similarity(const ImagePile &current, const ImagePile &previous,
                       SimilarityAggregation aggregation) {
  if (current.empty() || previous.empty())
    throw InvalidInput("pile_similarity: empty pile");
  if (current.rows() != previous.rows() || current.cols() != previous.cols())
    throw InvalidInput("pile_similarity: pile image dimensions differ");

  double sum = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (const GrayImage &a : current.images()) {
    for (const GrayImage &b : previous.images()) {
      const double mse = pair_mse(a, b);
      sum += mse;
      lowest = std::min(lowest, mse);
    }
  }
  if (aggregation == SimilarityAggregation::Min)
    return lowest;
  return sum / static_cast<double>(current.size() * previous.size());
}

double raw_valuation(double similarity, double distance, ValuationRule rule) {
  if (!(similarity >= 0.0) || !(distance >= 0.0))
    throw InvalidInput("raw_valuation: similarity and distance must be >= 0");
  switch (rule) {
  case ValuationRule::Literal:
    return similarity * distance;
  case ValuationRule::Proximity:
    return similarity / (1.0 + distance);
  }
  return similarity * distance;
}

ValuationInputs valuation_inputs(const Position &uav, const Position &device,
                                 const ImagePile &current,
                                 const ImagePile &previous,
                                 SimilarityAggregation aggregation,
                                 ValuationRule rule) {
  ValuationInputs in;
  in.distance = distance(uav, device);
  in.similarity = pile_similarity(current, previous, aggregation);
  in.raw_valuation = raw_valuation(in.similarity, in.distance, rule);
  return in;
}

ValuationProfile normalize_profile(std::span<const double> raw,
                                   const ValuationDistribution &dist) {
  dist.validate();
  if (raw.size() < 2)
    throw InvalidInput("normalize_profile needs at least two values");
  const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw InvalidInput("normalize_profile: non-finite raw valuation");
  if (!(hi > lo))
    throw DegenerateProfile("normalize_profile: all raw valuations are equal");

  ValuationProfile out;
  out.distribution = dist;
  out.values.resize(raw.size());
  const double span = dist.upper - dist.lower;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == hi) {
      out.values[i] = dist.upper;
      continue;
    }
    const double t = (raw[i] - lo) / (hi - lo);
    out.values[i] = std::clamp(dist.lower + t * span, dist.lower, dist.upper);
  }
  return out;
}

} // namespace airnet
