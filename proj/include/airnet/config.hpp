#pragma once

#include "airnet/auction.hpp"
#include "airnet/monotone_net.hpp"
#include "airnet/sim.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace airnet {

/// Everything a CLI run needs. Defaults:
/// five bidders, U[0.5, 1], five groups of three linear units, 500
/// iterations, 300 experiment cases.
struct ExperimentConfig {
  NetConfig net;
  ValuationDistribution distribution = ValuationDistribution::uniform(0.5, 1.0);
  std::size_t cases = 300;
  std::size_t test_samples = 10000;
  std::filesystem::path output_path;
  WorldConfig world;
  std::size_t max_rounds = 100;

  void validate() const;
};

using Setting = std::pair<std::string, std::string>;

/// Parses `key = value` lines. Text after `#` is a comment; blank lines are
/// ignored. Throws InvalidConfig on a line without '='.
std::vector<Setting> parse_settings(std::istream &in);
std::vector<Setting> read_settings(const std::filesystem::path &path);

/// Applies one setting. Throws InvalidConfig for unknown keys or values that
/// do not parse. Keys are listed in README.md.
void apply_setting(ExperimentConfig &config, const std::string &key,
                   const std::string &value);

void apply_settings(ExperimentConfig &config,
                    const std::vector<Setting> &settings);

} // namespace airnet
