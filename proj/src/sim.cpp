#include "airnet/sim.hpp"

#include "airnet/errors.hpp"
#include "airnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace airnet {

namespace {

// Value noise: hashed lattice values in [0, 1], smoothstep-interpolated.
double lattice_value(std::uint64_t seed, std::int64_t ix, std::int64_t iy) {
  const std::uint64_t h =
      mix_seed(seed ^ mix_seed(static_cast<std::uint64_t>(ix) * 0x9e3779b97f4a7c15ULL ^
                               static_cast<std::uint64_t>(iy)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

double scene_field(std::uint64_t seed, double x, double y, double scale) {
  const double gx = x / scale;
  const double gy = y / scale;
  const double fx = std::floor(gx);
  const double fy = std::floor(gy);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  const double tx = smoothstep(gx - fx);
  const double ty = smoothstep(gy - fy);
  const double v00 = lattice_value(seed, ix, iy);
  const double v10 = lattice_value(seed, ix + 1, iy);
  const double v01 = lattice_value(seed, ix, iy + 1);
  const double v11 = lattice_value(seed, ix + 1, iy + 1);
  const double top = v00 + (v10 - v00) * tx;
  const double bottom = v01 + (v11 - v01) * tx;
  return top + (bottom - top) * ty;
}

} // namespace

std::string_view to_string(MechanismKind kind) {
  return kind == MechanismKind::Dla ? "dla" : "spa";
}

MechanismKind kind_of(const Mechanism &mechanism) {
  return std::holds_alternative<LearnedAuction>(mechanism) ? MechanismKind::Dla
                                                           : MechanismKind::Spa;
}

void WorldConfig::validate() const {
  if (devices < 2)
    throw InvalidConfig("world needs at least 2 devices");
  if (!(area_width > 0.0) || !(area_height > 0.0) ||
      !std::isfinite(area_width) || !std::isfinite(area_height))
    throw InvalidConfig("area dimensions must be finite and positive");
  if (image_rows == 0 || image_cols == 0 || pile_size == 0)
    throw InvalidConfig("image dimensions and pile size must be positive");
  if (std::isnan(battery) || battery < 0.0)
    throw InvalidConfig("battery must be non-negative");
  if (!(feature_scale > 0.0) || !(footprint >= 0.0) || !(sensor_noise >= 0.0))
    throw InvalidConfig("scene parameters must be positive");
  const Position s = start();
  if (!std::isfinite(s.x) || !std::isfinite(s.y))
    throw InvalidConfig("UAV start position must be finite");
  try {
    distribution.validate();
  } catch (const InvalidInput &e) {
    throw InvalidConfig(e.what());
  }
}

ImagePile capture_pile(const WorldConfig &config, const Position &where,
                       std::uint64_t stream, std::size_t capture) {
  const std::uint64_t scene_seed = sub_seed(config.seed, 0x5ce7e);
  std::mt19937_64 noise_rng(sub_seed(sub_seed(config.seed, stream + 0x100), capture));
  std::uniform_real_distribution<double> noise(-config.sensor_noise,
                                               config.sensor_noise);

  const double pitch_x = config.footprint / static_cast<double>(config.image_cols);
  const double pitch_y = config.footprint / static_cast<double>(config.image_rows);
  const double x0 = where.x - 0.5 * config.footprint;
  const double y0 = where.y - 0.5 * config.footprint;

  std::vector<GrayImage> images;
  images.reserve(config.pile_size);
  for (std::size_t f = 0; f < config.pile_size; ++f) {
    GrayImage img(config.image_rows, config.image_cols);
    for (std::size_t r = 0; r < img.rows; ++r) {
      for (std::size_t c = 0; c < img.cols; ++c) {
        const double base = scene_field(scene_seed, x0 + (c + 0.5) * pitch_x,
                                        y0 + (r + 0.5) * pitch_y,
                                        config.feature_scale);
        img(r, c) = std::clamp(base + noise(noise_rng), 0.0, 1.0);
      }
    }
    images.push_back(std::move(img));
  }
  return ImagePile(std::move(images));
}

WorldState generate_world(const WorldConfig &config) {
  config.validate();
  WorldState state;
  state.config = config;
  state.rng_seed = config.seed;
  state.uav_position = config.start();
  state.battery = config.battery;

  std::mt19937_64 placement(sub_seed(config.seed, 0x91ace));
  std::uniform_real_distribution<double> ux(0.0, config.area_width);
  std::uniform_real_distribution<double> uy(0.0, config.area_height);
  state.devices.reserve(config.devices);
  for (std::size_t id = 0; id < config.devices; ++id) {
    Device d;
    d.id = id;
    d.position.x = ux(placement);
    d.position.y = uy(placement);
    d.pile = capture_pile(config, d.position, id + 1, 0);
    d.captures = 1;
    state.devices.push_back(std::move(d));
  }
  state.last_collected = capture_pile(config, state.uav_position, 0, 0);
  return state;
}

std::vector<ValuationInputs> valuation_breakdown(const WorldState &state) {
  if (!state.last_collected)
    throw InvalidInput("world has no previously collected pile");
  std::vector<ValuationInputs> out;
  out.reserve(state.devices.size());
  for (const Device &d : state.devices)
    out.push_back(valuation_inputs(state.uav_position, d.position, d.pile,
                                   *state.last_collected,
                                   state.config.aggregation, state.config.rule));
  return out;
}

ValuationProfile form_valuations(const WorldState &state) {
  const std::vector<ValuationInputs> inputs = valuation_breakdown(state);
  std::vector<double> raw(inputs.size());
  std::transform(inputs.begin(), inputs.end(), raw.begin(),
                 [](const ValuationInputs &in) { return in.raw_valuation; });
  const ValuationDistribution &dist = state.config.distribution;
  try {
    return normalize_profile(raw, dist);
  } catch (const DegenerateProfile &) {
    ValuationProfile flat;
    flat.distribution = dist;
    flat.values.assign(raw.size(), dist.midpoint());
    return flat;
  }
}

StepResult step(const WorldState &state, const Mechanism &mechanism) {
  if (!(state.battery > 0.0))
    throw EpisodeExhausted("UAV battery exhausted before round " +
                           std::to_string(state.round + 1));

  StepResult result{state, {}};
  RoundRecord &rec = result.record;
  rec.round = state.round + 1;
  rec.mechanism = kind_of(mechanism);
  rec.valuations = form_valuations(state);

  if (const auto *learned = std::get_if<LearnedAuction>(&mechanism)) {
    if (learned->params.n_bidders != state.devices.size())
      throw InvalidInput("learned auction bidder count does not match devices");
    rec.outcome = clear_hard(learned->params, rec.valuations.values);
  } else {
    rec.outcome = spa_clear(rec.valuations.values);
  }

  WorldState &next = result.state;
  if (rec.outcome.winner) {
    Device &winner = next.devices[*rec.outcome.winner];
    const double leg = distance(next.uav_position, winner.position);
    // The flown distance is capped by what the battery can pay for.
    rec.distance_flown = std::min(leg, next.battery);
    next.battery = std::max(0.0, next.battery - leg);
    next.uav_position = winner.position;
    rec.uav_moved_to = winner.position;
    next.last_collected = winner.pile;
    winner.pile = capture_pile(next.config, winner.position, winner.id + 1,
                               winner.captures);
    ++winner.captures;
  }
  next.round = rec.round;
  rec.uav_position = next.uav_position;
  rec.battery = next.battery;
  return result;
}

std::vector<RoundRecord> run_episode(WorldState state,
                                     const Mechanism &mechanism,
                                     std::size_t max_rounds) {
  if (max_rounds < 1)
    throw InvalidInput("run_episode needs max_rounds >= 1");
  std::vector<RoundRecord> log;
  log.reserve(std::min<std::size_t>(max_rounds, 4096));
  do {
    StepResult r = step(state, mechanism);
    state = std::move(r.state);
    log.push_back(std::move(r.record));
  } while (log.size() < max_rounds && state.battery > 0.0);
  return log;
}

} // namespace airnet
