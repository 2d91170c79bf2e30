#pragma once

#include "airnet/auction.hpp"
#include "airnet/monotone_net.hpp"

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

namespace airnet {

struct ExperimentRecord {
  std::size_t case_index = 0;
  double dla_revenue = 0.0;
  double spa_revenue = 0.0;
  double gap = 0.0; // dla_revenue - spa_revenue
};

/// Profile of case `index`, drawn from its own sub-seed of `seed` so that
/// any evaluation order reproduces the same cases.
ValuationProfile case_profile(const ValuationDistribution &dist,
                              std::size_t n_bidders, std::uint64_t seed,
                              std::size_t index);

/// Clears `cases` fresh profiles with the learned mechanism and with SPA.
/// Records are returned in case order. threads <= 1 runs serially.
std::vector<ExperimentRecord> revenue_gap(const MonotoneNetParams &params,
                                          const ValuationDistribution &dist,
                                          std::size_t cases, std::uint64_t seed,
                                          int threads = 0);

/// Ascending by gap; equal gaps keep case order.
void sort_by_gap(std::vector<ExperimentRecord> &records);

struct GapSummary {
  double mean_dla = 0.0;
  double mean_spa = 0.0;
  double mean_gap = 0.0;
  double positive_fraction = 0.0;
};

GapSummary summarize(const std::vector<ExperimentRecord> &records);

/// Columns: rank,gap,dla_revenue,spa_revenue.
void write_gap_csv(std::ostream &out,
                   const std::vector<ExperimentRecord> &sorted);

/// Standalone SVG line chart of the sorted gap curve.
void write_gap_svg(std::ostream &out,
                   const std::vector<ExperimentRecord> &sorted);

struct RevenueStats {
  double mean = 0.0;
  double stddev = 0.0; // population standard deviation
};

struct RevenueReport {
  std::size_t samples = 0;
  RevenueStats dla;
  RevenueStats spa;
  RevenueStats myerson;
};

/// Learned, second-price and closed-form optimal revenue on the same
/// sampled profiles.
RevenueReport evaluate_revenue(const MonotoneNetParams &params,
                               const ValuationDistribution &dist,
                               std::size_t samples, std::uint64_t seed,
                               int threads = 0);

/// Reads MYERSON_AIRNET_THREADS; unset, empty, 0 or unparsable means serial.
int threads_from_env();

} // namespace airnet
