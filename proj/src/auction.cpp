#include "airnet/auction.hpp"

#include "airnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace airnet {

ValuationDistribution ValuationDistribution::uniform(double lower,
                                                     double upper) {
  ValuationDistribution d;
  d.kind = Kind::Uniform;
  d.lower = lower;
  d.upper = upper;
  d.validate();
  return d;
}

void ValuationDistribution::validate() const {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper))
    throw InvalidInput("valuation distribution needs finite lower < upper");
}

double ValuationDistribution::cdf(double v) const {
  if (v <= lower)
    return 0.0;
  if (v >= upper)
    return 1.0;
  return (v - lower) / (upper - lower);
}

double ValuationDistribution::pdf(double v) const {
  if (v < lower || v > upper)
    return 0.0;
  return 1.0 / (upper - lower);
}

void ValuationProfile::validate() const {
  distribution.validate();
  if (values.size() < 2)
    throw InvalidInput("valuation profile needs at least two bidders");
  for (double v : values) {
    if (!distribution.contains(v))
      throw DomainError("valuation " + std::to_string(v) +
                        " outside distribution support");
  }
}

AuctionOutcome AuctionOutcome::no_sale(std::size_t n_bidders) {
  AuctionOutcome out;
  out.allocation.assign(n_bidders, 0.0);
  return out;
}

AuctionOutcome AuctionOutcome::sale(std::size_t n_bidders, std::size_t winner,
                                    double payment) {
  AuctionOutcome out;
  out.winner = winner;
  out.payment = payment;
  out.revenue = payment;
  out.allocation.assign(n_bidders, 0.0);
  out.allocation[winner] = 1.0;
  return out;
}

std::size_t argmax_lowest(std::span<const double> xs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] > xs[best])
      best = i;
  }
  return best;
}

AuctionOutcome spa_clear(std::span<const double> bids) {
  if (bids.size() < 2)
    throw InvalidInput("second-price auction needs at least two bids");
  for (double b : bids) {
    if (!(b >= 0.0) || !std::isfinite(b))
      throw InvalidInput("bids must be finite and non-negative");
  }
  const std::size_t winner = argmax_lowest(bids);
  double second = -1.0;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (i != winner)
      second = std::max(second, bids[i]);
  }
  return AuctionOutcome::sale(bids.size(), winner, second);
}

double virtual_valuation(double v, const ValuationDistribution &dist) {
  if (!dist.contains(v))
    throw DomainError("virtual_valuation: value outside support");
  switch (dist.kind) {
  case ValuationDistribution::Kind::Uniform:
    // v - (1 - (v - a) / (b - a)) * (b - a) simplifies to 2v - b.
    return 2.0 * v - dist.upper;
  }
  return v - (1.0 - dist.cdf(v)) / dist.pdf(v);
}

double virtual_valuation_inverse(double y, const ValuationDistribution &dist) {
  switch (dist.kind) {
  case ValuationDistribution::Kind::Uniform: {
    const double lo = 2.0 * dist.lower - dist.upper;
    const double hi = dist.upper;
    if (!(y >= lo && y <= hi))
      throw DomainError("virtual_valuation_inverse: value outside image");
    return 0.5 * (y + dist.upper);
  }
  }
  throw DomainError("virtual_valuation_inverse: unsupported distribution");
}

AuctionOutcome myerson_clear(const ValuationProfile &profile) {
  profile.validate();
  const std::size_t n = profile.n_bidders();
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i)
    phi[i] = virtual_valuation(profile.values[i], profile.distribution);

  const std::size_t winner = argmax_lowest(phi);
  if (phi[winner] < 0.0)
    return AuctionOutcome::no_sale(n);

  double runner_up = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != winner)
      runner_up = std::max(runner_up, phi[i]);
  }
  const double payment =
      virtual_valuation_inverse(runner_up, profile.distribution);
  return AuctionOutcome::sale(n, winner, payment);
}

} // namespace airnet
