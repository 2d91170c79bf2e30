#include "airnet/experiments.hpp"

#include "airnet/episode_io.hpp"
#include "airnet/errors.hpp"
#include "airnet/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>

namespace airnet {

ValuationProfile case_profile(const ValuationDistribution &dist,
                              std::size_t n_bidders, std::uint64_t seed,
                              std::size_t index) {
  std::mt19937_64 rng(sub_seed(seed, index));
  return draw_profile(rng, dist, n_bidders);
}

namespace {

ExperimentRecord run_case(const MonotoneNetParams &params,
                          const ValuationDistribution &dist, std::uint64_t seed,
                          std::size_t index) {
  const ValuationProfile p = case_profile(dist, params.n_bidders, seed, index);
  ExperimentRecord r;
  r.case_index = index;
  r.dla_revenue = clear_hard(params, p.values).revenue;
  r.spa_revenue = spa_clear(p.values).revenue;
  r.gap = r.dla_revenue - r.spa_revenue;
  return r;
}

RevenueStats stats(const std::vector<double> &xs) {
  RevenueStats s;
  for (double x : xs)
    s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs)
    ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(xs.size()));
  return s;
}

} // namespace

std::vector<ExperimentRecord> revenue_gap(const MonotoneNetParams &params,
                                          const ValuationDistribution &dist,
                                          std::size_t cases, std::uint64_t seed,
                                          int threads) {
  if (cases < 1)
    throw InvalidInput("revenue_gap needs at least one case");
  dist.validate();
  std::vector<ExperimentRecord> records(cases);
  if (threads <= 1) {
    for (std::size_t c = 0; c < cases; ++c)
      records[c] = run_case(params, dist, seed, c);
    return records;
  }
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(cases); ++c)
    records[c] = run_case(params, dist, seed, static_cast<std::size_t>(c));
  return records;
}

void sort_by_gap(std::vector<ExperimentRecord> &records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord &a, const ExperimentRecord &b) {
                     return a.gap < b.gap;
                   });
}

GapSummary summarize(const std::vector<ExperimentRecord> &records) {
  GapSummary s;
  if (records.empty())
    return s;
  std::size_t positive = 0;
  for (const ExperimentRecord &r : records) {
    s.mean_dla += r.dla_revenue;
    s.mean_spa += r.spa_revenue;
    s.mean_gap += r.gap;
    positive += r.gap > 0.0 ? 1 : 0;
  }
  const auto n = static_cast<double>(records.size());
  s.mean_dla /= n;
  s.mean_spa /= n;
  s.mean_gap /= n;
  s.positive_fraction = static_cast<double>(positive) / n;
  return s;
}

void write_gap_csv(std::ostream &out,
                   const std::vector<ExperimentRecord> &sorted) {
  out << "rank,gap,dla_revenue,spa_revenue\n";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out << i << ',' << format_real(sorted[i].gap) << ','
        << format_real(sorted[i].dla_revenue) << ','
        << format_real(sorted[i].spa_revenue) << '\n';
  }
}

void write_gap_svg(std::ostream &out,
                   const std::vector<ExperimentRecord> &sorted) {
  constexpr double width = 640, height = 400, margin = 50;
  double lo = 0.0, hi = 0.0;
  for (const ExperimentRecord &r : sorted) {
    lo = std::min(lo, r.gap);
    hi = std::max(hi, r.gap);
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double n = sorted.size() > 1 ? static_cast<double>(sorted.size() - 1) : 1.0;
  auto px = [&](double i) { return margin + i / n * (width - 2 * margin); };
  auto py = [&](double g) {
    return height - margin - (g - lo) / (hi - lo) * (height - 2 * margin);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << py(0.0) << "\" x2=\""
      << width - margin << "\" y2=\"" << py(0.0)
      << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n"
      << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < sorted.size(); ++i)
    out << (i ? " " : "") << px(static_cast<double>(i)) << ','
        << py(sorted[i].gap);
  out << "\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">case (sorted by gap)</text>\n"
      << "<text x=\"14\" y=\"" << height / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 "
      << height / 2 << ")\">revenue gap (DLA - SPA)</text>\n"
      << "<text x=\"" << margin - 4 << "\" y=\"" << py(hi)
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_real(hi)
      << "</text>\n"
      << "<text x=\"" << margin - 4 << "\" y=\"" << py(lo)
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_real(lo)
      << "</text>\n"
      << "</svg>\n";
}

RevenueReport evaluate_revenue(const MonotoneNetParams &params,
                               const ValuationDistribution &dist,
                               std::size_t samples, std::uint64_t seed,
                               int threads) {
  if (samples < 1)
    throw InvalidInput("evaluate_revenue needs at least one sample");
  dist.validate();
  std::vector<double> dla(samples), spa(samples), opt(samples);
  auto one = [&](std::size_t s) {
    const ValuationProfile p = case_profile(dist, params.n_bidders, seed, s);
    dla[s] = clear_hard(params, p.values).revenue;
    spa[s] = spa_clear(p.values).revenue;
    opt[s] = myerson_clear(p).revenue;
  };
  if (threads <= 1) {
    for (std::size_t s = 0; s < samples; ++s)
      one(s);
  } else {
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(samples); ++s)
      one(static_cast<std::size_t>(s));
  }
  return {samples, stats(dla), stats(spa), stats(opt)};
}

int threads_from_env() {
  const char *raw = std::getenv("MYERSON_AIRNET_THREADS");
  if (raw == nullptr || *raw == '\0')
    return 0;
  int value = 0;
  const char *end = raw + std::strlen(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value < 0)
    return 0;
  return value;
}

} // namespace airnet
