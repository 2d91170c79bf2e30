#include "airnet/episode_io.hpp"

#include "airnet/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>

namespace airnet {

using nlohmann::json;

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_episode_csv(std::ostream &out, const std::vector<RoundRecord> &log) {
  out << "round,mechanism,winner,payment,revenue,uav_x,uav_y,battery,"
         "distance_flown\n";
  for (const RoundRecord &r : log) {
    out << r.round << ',' << to_string(r.mechanism) << ',';
    if (r.outcome.winner)
      out << *r.outcome.winner;
    else
      out << -1;
    out << ',' << format_real(r.outcome.payment) << ','
        << format_real(r.outcome.revenue) << ','
        << format_real(r.uav_position.x) << ','
        << format_real(r.uav_position.y) << ',' << format_real(r.battery)
        << ',' << format_real(r.distance_flown) << '\n';
  }
}

namespace {

// JSON has no infinity; an unlimited battery is written as the string "inf".
json encode_real(double x) {
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  return x;
}

double decode_real(const json &j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf")
      return std::numeric_limits<double>::infinity();
    if (s == "-inf")
      return -std::numeric_limits<double>::infinity();
    throw InvalidInput("event stream: bad real '" + s + "'");
  }
  return j.get<double>();
}

} // namespace

void write_event_stream(std::ostream &out,
                        const std::vector<RoundRecord> &log) {
  for (const RoundRecord &r : log) {
    json e;
    e["event"] = "round";
    e["round"] = r.round;
    e["mechanism"] = to_string(r.mechanism);
    e["valuations"] = r.valuations.values;
    e["dist_lower"] = r.valuations.distribution.lower;
    e["dist_upper"] = r.valuations.distribution.upper;
    e["winner"] = r.outcome.winner ? json(*r.outcome.winner) : json(nullptr);
    e["payment"] = r.outcome.payment;
    e["revenue"] = r.outcome.revenue;
    e["allocation"] = r.outcome.allocation;
    e["uav_moved_to"] = r.uav_moved_to
                            ? json::array({r.uav_moved_to->x, r.uav_moved_to->y})
                            : json(nullptr);
    e["distance_flown"] = r.distance_flown;
    e["uav_x"] = r.uav_position.x;
    e["uav_y"] = r.uav_position.y;
    e["battery"] = encode_real(r.battery);
    out << e.dump() << '\n';
  }
}

std::vector<RoundRecord> read_event_stream(std::istream &in) {
  std::vector<RoundRecord> log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty())
      continue;
    try {
      const json e = json::parse(line);
      RoundRecord r;
      r.round = e.at("round").get<std::size_t>();
      const auto mech = e.at("mechanism").get<std::string>();
      if (mech != "dla" && mech != "spa")
        throw InvalidInput("unknown mechanism '" + mech + "'");
      r.mechanism = mech == "dla" ? MechanismKind::Dla : MechanismKind::Spa;
      r.valuations.values = e.at("valuations").get<std::vector<double>>();
      r.valuations.distribution.lower = e.at("dist_lower").get<double>();
      r.valuations.distribution.upper = e.at("dist_upper").get<double>();
      if (!e.at("winner").is_null())
        r.outcome.winner = e.at("winner").get<std::size_t>();
      r.outcome.payment = e.at("payment").get<double>();
      r.outcome.revenue = e.at("revenue").get<double>();
      r.outcome.allocation = e.at("allocation").get<std::vector<double>>();
      if (!e.at("uav_moved_to").is_null()) {
        const auto xy = e.at("uav_moved_to").get<std::vector<double>>();
        if (xy.size() != 2)
          throw InvalidInput("uav_moved_to must have two coordinates");
        r.uav_moved_to = Position{xy[0], xy[1]};
      }
      r.distance_flown = e.at("distance_flown").get<double>();
      r.uav_position = {e.at("uav_x").get<double>(), e.at("uav_y").get<double>()};
      r.battery = decode_real(e.at("battery"));
      log.push_back(std::move(r));
    } catch (const json::exception &ex) {
      throw InvalidInput("event stream line " + std::to_string(line_no) +
                         ": " + ex.what());
    } catch (const InvalidInput &ex) {
      throw InvalidInput("event stream line " + std::to_string(line_no) +
                         ": " + ex.what());
    }
  }
  return log;
}

} // namespace airnet
