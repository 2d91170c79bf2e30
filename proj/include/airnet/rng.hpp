#pragma once

#include "airnet/auction.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace airnet {

/// SplitMix64 finalizer; used to derive independent sub-seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
  return mix_seed(mix_seed(master) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

inline ValuationProfile draw_profile(std::mt19937_64 &rng,
                                     const ValuationDistribution &dist,
                                     std::size_t n_bidders) {
  std::uniform_real_distribution<double> u(dist.lower, dist.upper);
  ValuationProfile p;
  p.distribution = dist;
  p.values.resize(n_bidders);
  for (double &v : p.values)
    v = u(rng);
  return p;
}

inline std::vector<ValuationProfile>
draw_profiles(std::mt19937_64 &rng, const ValuationDistribution &dist,
              std::size_t n_bidders, std::size_t count) {
  std::vector<ValuationProfile> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s)
    out.push_back(draw_profile(rng, dist, n_bidders));
  return out;
}

} // namespace airnet
