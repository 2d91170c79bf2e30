#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace airnet {

/// Bidder valuation distribution. Only the uniform family is implemented;
/// `kind` exists so that other families can be added without changing
/// callers.
struct ValuationDistribution {
  enum class Kind { Uniform };

  Kind kind = Kind::Uniform;
  double lower = 0.0;
  double upper = 1.0;

  static ValuationDistribution uniform(double lower, double upper);

  double cdf(double v) const;
  double pdf(double v) const;
  double midpoint() const { return 0.5 * (lower + upper); }
  bool contains(double v) const { return v >= lower && v <= upper; }

  /// Throws InvalidInput unless lower < upper and both are finite.
  void validate() const;
};

struct ValuationProfile {
  std::vector<double> values;
  ValuationDistribution distribution;

  std::size_t n_bidders() const { return values.size(); }

  /// Throws InvalidInput on fewer than two bidders, DomainError on a value
  /// outside the distribution's support.
  void validate() const;
};

struct AuctionOutcome {
  std::optional<std::size_t> winner;
  double payment = 0.0;
  std::vector<double> allocation;
  double revenue = 0.0;

  static AuctionOutcome no_sale(std::size_t n_bidders);
  static AuctionOutcome sale(std::size_t n_bidders, std::size_t winner,
                             double payment);
};

/// Index of the largest element; ties go to the lowest index.
std::size_t argmax_lowest(std::span<const double> xs);

/// Second-price (Vickrey) auction without reserve.
AuctionOutcome spa_clear(std::span<const double> bids);

/// v - (1 - F(v)) / f(v). For U[a, b] this is 2v - b.
double virtual_valuation(double v, const ValuationDistribution &dist);

/// Inverse of virtual_valuation on its image over the support.
double virtual_valuation_inverse(double y, const ValuationDistribution &dist);

/// Closed-form optimal auction for independent bidders with a known regular
/// distribution: highest non-negative virtual value wins and pays the value
/// at which its virtual value would match max(runner-up virtual value, 0).
AuctionOutcome myerson_clear(const ValuationProfile &profile);

} // namespace airnet
