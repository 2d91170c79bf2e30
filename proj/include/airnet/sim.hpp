#pragma once

#include "airnet/auction.hpp"
#include "airnet/monotone_net.hpp"
#include "airnet/valuation.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace airnet {

/// Scenario settings. Defaults are artifact choices, not measured values.
struct WorldConfig {
  double area_width = 1000.0;  // meters
  double area_height = 1000.0; // meters
  std::size_t devices = 5;
  std::size_t image_rows = 8;
  std::size_t image_cols = 8;
  std::size_t pile_size = 3;
  double battery = 5000.0; // meters of flight
  /// Defaults to the area center.
  std::optional<Position> uav_start;
  /// Lattice spacing of the synthetic scene field, meters.
  double feature_scale = 250.0;
  /// Ground footprint covered by one image, meters.
  double footprint = 200.0;
  /// Half-width of the per-capture uniform sensor noise.
  double sensor_noise = 0.15;
  std::uint64_t seed = 1;

  ValuationDistribution distribution = ValuationDistribution::uniform(0.5, 1.0);
  ValuationRule rule = ValuationRule::Literal;
  SimilarityAggregation aggregation = SimilarityAggregation::Mean;

  Position start() const {
    return uav_start.value_or(Position{0.5 * area_width, 0.5 * area_height});
  }

  /// Throws InvalidConfig.
  void validate() const;
};

struct Device {
  std::size_t id = 0;
  Position position;
  ImagePile pile;
  /// Number of piles captured so far; drives fresh observations.
  std::size_t captures = 0;

  friend bool operator==(const Device &, const Device &) = default;
};

struct WorldState {
  Position uav_position;
  double battery = 0.0;
  std::vector<Device> devices;
  std::optional<ImagePile> last_collected;
  std::size_t round = 0;
  std::uint64_t rng_seed = 0;
  WorldConfig config;
};

enum class MechanismKind { Dla, Spa };

std::string_view to_string(MechanismKind kind);

struct SecondPrice {};
struct LearnedAuction {
  MonotoneNetParams params;
};
using Mechanism = std::variant<LearnedAuction, SecondPrice>;

MechanismKind kind_of(const Mechanism &mechanism);

struct RoundRecord {
  std::size_t round = 0;
  ValuationProfile valuations;
  MechanismKind mechanism = MechanismKind::Spa;
  AuctionOutcome outcome;
  std::optional<Position> uav_moved_to;
  double distance_flown = 0.0;
  /// State after the round.
  Position uav_position;
  double battery = 0.0;
};

struct StepResult {
  WorldState state;
  RoundRecord record;
};

/// Deterministic pile of `pile_size` images seen from `where`. `stream`
/// separates devices (0 is the UAV start sentinel); `capture` advances the
/// sensor noise between successive observations.
ImagePile capture_pile(const WorldConfig &config, const Position &where,
                       std::uint64_t stream, std::size_t capture);

WorldState generate_world(const WorldConfig &config);

/// Per-device distance, similarity and raw valuation for the current state.
std::vector<ValuationInputs> valuation_breakdown(const WorldState &state);

ValuationProfile form_valuations(const WorldState &state);

/// One auction round. Throws EpisodeExhausted when the battery is empty.
StepResult step(const WorldState &state, const Mechanism &mechanism);

/// Steps until the battery is exhausted or `max_rounds` rounds are played.
std::vector<RoundRecord> run_episode(WorldState state,
                                     const Mechanism &mechanism,
                                     std::size_t max_rounds);

} // namespace airnet
