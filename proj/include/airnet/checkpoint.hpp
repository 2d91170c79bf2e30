#pragma once

#include "airnet/auction.hpp"
#include "airnet/monotone_net.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>

namespace airnet {

inline constexpr int kCheckpointVersion = 1;

/// A trained network plus the settings it was trained under.
struct Checkpoint {
  MonotoneNetParams params;
  double kappa = 100.0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  ValuationDistribution distribution;
};

struct NetShape {
  std::size_t n_bidders;
  std::size_t groups;
  std::size_t units;
};

/// Text format, one token group per line:
///
///   airnet-checkpoint
///   format_version 1
///   n_bidders N / groups K / linear_units J
///   kappa, seed, iterations, dist_lower, dist_upper
///   theta   followed by N*K rows of J values
///   beta    followed by N*K rows of J values
///   end
///
/// Reals are written with 17 significant digits so loading is bit-exact.
/// Throws IoError when the file cannot be written.
void save_params(const std::filesystem::path &path, const Checkpoint &ckpt);

/// Throws CheckpointError (Malformed, VersionMismatch, DimensionMismatch) or
/// IoError when the file cannot be opened.
Checkpoint load_params(const std::filesystem::path &path,
                       std::optional<NetShape> expected = std::nullopt);

} // namespace airnet
