#pragma once

#include "airnet/sim.hpp"

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace airnet {

/// Full round-trip decimal form ("%.17g").
std::string format_real(double x);

/// Columns: round,mechanism,winner,payment,revenue,uav_x,uav_y,battery,
/// distance_flown. A missing winner is written as -1.
void write_episode_csv(std::ostream &out, const std::vector<RoundRecord> &log);

/// One JSON object per line, one line per round, carrying every field of the
/// record so the episode can be replayed.
void write_event_stream(std::ostream &out, const std::vector<RoundRecord> &log);

/// Parses the output of write_event_stream. Throws InvalidInput on a
/// malformed line.
std::vector<RoundRecord> read_event_stream(std::istream &in);

} // namespace airnet
