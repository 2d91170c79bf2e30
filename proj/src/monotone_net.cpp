#include "airnet/monotone_net.hpp"

#include "airnet/batch_kernels.hpp"
#include "airnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace airnet {

MonotoneNetParams::MonotoneNetParams(std::size_t n_bidders, std::size_t groups,
                                     std::size_t units)
    : n_bidders(n_bidders), groups(groups), units(units),
      theta(n_bidders * groups * units, 0.0),
      beta(n_bidders * groups * units, 0.0) {
  if (groups == 0 || units == 0)
    throw InvalidInput("monotone network needs at least one group and unit");
}

double MonotoneNetParams::weight(std::size_t bidder, std::size_t k,
                                 std::size_t j) const {
  return std::exp(theta[index(bidder, k, j)]);
}

MonotoneNetParams MonotoneNetParams::affine(std::size_t n_bidders,
                                            double weight, double offset) {
  if (!(weight > 0.0))
    throw InvalidInput("affine transform weight must be positive");
  MonotoneNetParams p(n_bidders, 1, 1);
  std::fill(p.theta.begin(), p.theta.end(), std::log(weight));
  std::fill(p.beta.begin(), p.beta.end(), offset);
  return p;
}

void NetConfig::validate() const {
  if (n_bidders < 2)
    throw InvalidConfig("n_bidders must be at least 2");
  if (groups < 1 || units < 1)
    throw InvalidConfig("groups and linear_units must be at least 1");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw InvalidConfig("kappa must be finite and positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw InvalidConfig("learning_rate must be finite and positive");
  if (batch_size < 1)
    throw InvalidConfig("batch_size must be at least 1");
  if (iterations < 1)
    throw InvalidConfig("iterations must be at least 1");
  if (!(convergence_tol >= 0.0))
    throw InvalidConfig("convergence_tol must be non-negative");
}

TransformResult transform_active(const MonotoneNetParams &params,
                                 std::size_t bidder, double b) {
  TransformResult best{-std::numeric_limits<double>::infinity(), {}};
  for (std::size_t k = 0; k < params.groups; ++k) {
    double group_min = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < params.units; ++j) {
      const std::size_t at = params.index(bidder, k, j);
      const double z = std::exp(params.theta[at]) * b + params.beta[at];
      if (z < group_min) {
        group_min = z;
        arg = j;
      }
    }
    if (group_min > best.value || k == 0)
      best = {group_min, {k, arg}};
  }
  return best;
}

TransformResult transform_inverse_active(const MonotoneNetParams &params,
                                         std::size_t bidder, double y) {
  TransformResult best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t k = 0; k < params.groups; ++k) {
    double group_max = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < params.units; ++j) {
      const std::size_t at = params.index(bidder, k, j);
      const double z = (y - params.beta[at]) / std::exp(params.theta[at]);
      if (z > group_max) {
        group_max = z;
        arg = j;
      }
    }
    if (group_max < best.value || k == 0)
      best = {group_max, {k, arg}};
  }
  return best;
}

double transform(const MonotoneNetParams &params, std::size_t bidder,
                 double b) {
  return transform_active(params, bidder, b).value;
}

double transform_inverse(const MonotoneNetParams &params, std::size_t bidder,
                         double y) {
  return transform_inverse_active(params, bidder, y).value;
}

std::vector<double> transform_all(const MonotoneNetParams &params,
                                  std::span<const double> bids) {
  if (bids.size() != params.n_bidders)
    throw InvalidInput("bid count does not match network bidder count");
  std::vector<double> out(bids.size());
  for (std::size_t i = 0; i < bids.size(); ++i)
    out[i] = transform(params, i, bids[i]);
  return out;
}

namespace {

// Shift for a numerically safe softmax over the bids plus the zero slot.
double softmax_shift(std::span<const double> transformed_bids, double kappa) {
  double m = 0.0;
  for (double b : transformed_bids)
    m = std::max(m, kappa * b);
  return m;
}

} // namespace

std::vector<double> allocate_soft(std::span<const double> transformed_bids,
                                  double kappa) {
  if (transformed_bids.empty())
    throw InvalidInput("allocate_soft needs at least one bid");
  if (!(kappa > 0.0))
    throw InvalidInput("allocate_soft needs kappa > 0");
  const double shift = softmax_shift(transformed_bids, kappa);
  std::vector<double> g(transformed_bids.size());
  double z = std::exp(-shift);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = std::exp(kappa * transformed_bids[i] - shift);
    z += g[i];
  }
  for (double &x : g)
    x /= z;
  return g;
}

double no_sale_probability(std::span<const double> transformed_bids,
                           double kappa) {
  const double shift = softmax_shift(transformed_bids, kappa);
  const double dummy = std::exp(-shift);
  double z = dummy;
  for (double b : transformed_bids)
    z += std::exp(kappa * b - shift);
  return dummy / z;
}

double payment_soft(const MonotoneNetParams &params,
                    std::span<const double> transformed_bids,
                    std::size_t bidder) {
  if (transformed_bids.size() < 2)
    throw InvalidInput("payment needs at least two bidders");
  if (bidder >= transformed_bids.size())
    throw InvalidInput("bidder index out of range");
  double rival = 0.0;
  for (std::size_t j = 0; j < transformed_bids.size(); ++j) {
    if (j != bidder)
      rival = std::max(rival, transformed_bids[j]);
  }
  return transform_inverse(params, bidder, rival);
}

AuctionOutcome clear_hard(const MonotoneNetParams &params,
                          std::span<const double> bids) {
  if (bids.size() < 2)
    throw InvalidInput("clearing needs at least two bids");
  const std::vector<double> transformed = transform_all(params, bids);
  const std::size_t winner = argmax_lowest(transformed);
  if (!(transformed[winner] > 0.0))
    return AuctionOutcome::no_sale(bids.size());
  return AuctionOutcome::sale(bids.size(), winner,
                              payment_soft(params, transformed, winner));
}

double loss(const MonotoneNetParams &params,
            std::span<const ValuationProfile> batch, double kappa) {
  if (batch.empty())
    throw InvalidInput("loss needs a non-empty batch");
  double total = 0.0;
  for (const ValuationProfile &profile : batch) {
    const std::vector<double> transformed =
        transform_all(params, profile.values);
    const std::vector<double> g = allocate_soft(transformed, kappa);
    double revenue = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      revenue += g[i] * payment_soft(params, transformed, i);
    total -= revenue;
  }
  return total / static_cast<double>(batch.size());
}

MonotoneNetParams grad(const MonotoneNetParams &params,
                       std::span<const ValuationProfile> batch, double kappa) {
  if (batch.empty())
    throw InvalidInput("grad needs a non-empty batch");
  return loss_and_grad_serial(params, batch, kappa).grad;
}

MonotoneNetParams init_params(std::size_t n_bidders, std::size_t groups,
                              std::size_t units, std::uint64_t seed) {
  MonotoneNetParams p(n_bidders, groups, units);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> theta_dist(0.0, 0.1);
  std::uniform_real_distribution<double> beta_dist(-0.5, 0.0);
  for (std::size_t at = 0; at < p.size(); ++at) {
    p.theta[at] = theta_dist(rng);
    p.beta[at] = beta_dist(rng);
  }
  return p;
}

} // namespace airnet
