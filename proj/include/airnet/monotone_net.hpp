#pragma once

#include "airnet/auction.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace airnet {

/// Per-bidder monotone max-min networks
///
///   phi_i(b) = max_k min_j ( w_ikj * b + beta_ikj ),  w_ikj = exp(theta_ikj)
///
/// Parameters are stored row-major as [bidder][group][unit]. The same shape
/// doubles as the gradient container.
struct MonotoneNetParams {
  std::size_t n_bidders = 0;
  std::size_t groups = 0;
  std::size_t units = 0;
  std::vector<double> theta;
  std::vector<double> beta;

  MonotoneNetParams() = default;
  MonotoneNetParams(std::size_t n_bidders, std::size_t groups,
                    std::size_t units);

  std::size_t size() const { return theta.size(); }
  std::size_t index(std::size_t bidder, std::size_t k, std::size_t j) const {
    return (bidder * groups + k) * units + j;
  }
  std::size_t per_bidder() const { return groups * units; }

  double weight(std::size_t bidder, std::size_t k, std::size_t j) const;

  bool same_shape(const MonotoneNetParams &other) const {
    return n_bidders == other.n_bidders && groups == other.groups &&
           units == other.units;
  }

  /// Every bidder gets the single-unit transform w * b + offset.
  static MonotoneNetParams affine(std::size_t n_bidders, double weight,
                                  double offset);

  friend bool operator==(const MonotoneNetParams &,
                         const MonotoneNetParams &) = default;
};

enum class Optimizer { Adam, GradientDescent };

struct NetConfig {
  std::size_t n_bidders = 5;
  std::size_t groups = 5;
  std::size_t units = 3;
  double kappa = 100.0;
  Optimizer optimizer = Optimizer::Adam;
  double learning_rate = 0.01;
  std::size_t batch_size = 4096;
  std::size_t iterations = 500;
  std::uint64_t seed = 0;
  double convergence_tol = 0.0;

  void validate() const;
};

struct TrainingTrace {
  std::vector<double> losses;
  double final_loss = 0.0;
  std::optional<std::size_t> converged_at;
};

/// Location of the affine unit selected by the max-min (or min-max) layers.
struct ActiveUnit {
  std::size_t group = 0;
  std::size_t unit = 0;
};

struct TransformResult {
  double value;
  ActiveUnit active;
};

TransformResult transform_active(const MonotoneNetParams &params,
                                 std::size_t bidder, double b);
TransformResult transform_inverse_active(const MonotoneNetParams &params,
                                         std::size_t bidder, double y);

double transform(const MonotoneNetParams &params, std::size_t bidder, double b);
double transform_inverse(const MonotoneNetParams &params, std::size_t bidder,
                         double y);

/// Softmax with temperature kappa over the N transformed bids plus a fixed
/// no-sale slot at 0. Returns the N bidder probabilities; the no-sale mass is
/// 1 - sum.
std::vector<double> allocate_soft(std::span<const double> transformed_bids,
                                  double kappa);

/// Probability of the no-sale slot under the same softmax.
double no_sale_probability(std::span<const double> transformed_bids,
                           double kappa);

/// Conditional payment of `bidder`: inverse transform of the ReLU of the
/// highest rival transformed bid.
double payment_soft(const MonotoneNetParams &params,
                    std::span<const double> transformed_bids,
                    std::size_t bidder);

/// Inference-mode clearing: argmax of transformed bids wins if positive.
AuctionOutcome clear_hard(const MonotoneNetParams &params,
                          std::span<const double> bids);

std::vector<double> transform_all(const MonotoneNetParams &params,
                                  std::span<const double> bids);

/// Mean over the batch of -sum_i g_i * p_i on truthful bids.
double loss(const MonotoneNetParams &params,
            std::span<const ValuationProfile> batch, double kappa);

/// Analytic gradient of `loss` with respect to theta and beta.
MonotoneNetParams grad(const MonotoneNetParams &params,
                       std::span<const ValuationProfile> batch, double kappa);

/// theta ~ N(0, 0.1), beta ~ U(-0.5, 0).
MonotoneNetParams init_params(std::size_t n_bidders, std::size_t groups,
                              std::size_t units, std::uint64_t seed);

struct TrainResult {
  MonotoneNetParams params;
  TrainingTrace trace;
};

/// First-order training on fresh i.i.d. batches (Adam by default, plain
/// gradient descent on request). `threads` > 1 evaluates
/// each batch with the OpenMP kernel; results are identical either way.
TrainResult train(const NetConfig &config, const ValuationDistribution &dist,
                  int threads = 0);

} // namespace airnet
