#include "airnet/config.hpp"

#include "airnet/errors.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

namespace airnet {

namespace {

std::string trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T> T parse(const std::string &key, const std::string &text) {
  T value{};
  const char *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw InvalidConfig("bad value '" + text + "' for " + key);
  return value;
}

using Handler = std::function<void(ExperimentConfig &, const std::string &,
                                   const std::string &)>;

template <typename T, typename Field> Handler number(Field field) {
  return [field](ExperimentConfig &c, const std::string &k,
                 const std::string &v) { field(c) = parse<T>(k, v); };
}

const std::map<std::string, Handler> &handlers() {
  static const std::map<std::string, Handler> table = {
      {"n_bidders", number<std::size_t>([](auto &c) -> auto & { return c.net.n_bidders; })},
      {"groups", number<std::size_t>([](auto &c) -> auto & { return c.net.groups; })},
      {"linear_units", number<std::size_t>([](auto &c) -> auto & { return c.net.units; })},
      {"kappa", number<double>([](auto &c) -> auto & { return c.net.kappa; })},
      {"learning_rate", number<double>([](auto &c) -> auto & { return c.net.learning_rate; })},
      {"batch_size", number<std::size_t>([](auto &c) -> auto & { return c.net.batch_size; })},
      {"iterations", number<std::size_t>([](auto &c) -> auto & { return c.net.iterations; })},
      {"convergence_tol", number<double>([](auto &c) -> auto & { return c.net.convergence_tol; })},
      {"dist_lower", number<double>([](auto &c) -> auto & { return c.distribution.lower; })},
      {"dist_upper", number<double>([](auto &c) -> auto & { return c.distribution.upper; })},
      {"cases", number<std::size_t>([](auto &c) -> auto & { return c.cases; })},
      {"test_samples", number<std::size_t>([](auto &c) -> auto & { return c.test_samples; })},
      {"max_rounds", number<std::size_t>([](auto &c) -> auto & { return c.max_rounds; })},
      {"world.area_width", number<double>([](auto &c) -> auto & { return c.world.area_width; })},
      {"world.area_height", number<double>([](auto &c) -> auto & { return c.world.area_height; })},
      {"world.devices", number<std::size_t>([](auto &c) -> auto & { return c.world.devices; })},
      {"world.image_rows", number<std::size_t>([](auto &c) -> auto & { return c.world.image_rows; })},
      {"world.image_cols", number<std::size_t>([](auto &c) -> auto & { return c.world.image_cols; })},
      {"world.pile_size", number<std::size_t>([](auto &c) -> auto & { return c.world.pile_size; })},
      {"world.battery", number<double>([](auto &c) -> auto & { return c.world.battery; })},
      {"world.feature_scale", number<double>([](auto &c) -> auto & { return c.world.feature_scale; })},
      {"world.footprint", number<double>([](auto &c) -> auto & { return c.world.footprint; })},
      {"world.sensor_noise", number<double>([](auto &c) -> auto & { return c.world.sensor_noise; })},
      {"world.seed", number<std::uint64_t>([](auto &c) -> auto & { return c.world.seed; })},
      {"seed",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         c.net.seed = parse<std::uint64_t>(k, v);
         c.world.seed = c.net.seed;
       }},
      {"output", [](ExperimentConfig &c, const std::string &,
                    const std::string &v) { c.output_path = v; }},
      {"optimizer",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         if (v == "adam")
           c.net.optimizer = Optimizer::Adam;
         else if (v == "gd")
           c.net.optimizer = Optimizer::GradientDescent;
         else
           throw InvalidConfig("bad value '" + v + "' for " + k + " (adam|gd)");
       }},
      {"world.uav_x",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         Position p = c.world.start();
         p.x = parse<double>(k, v);
         c.world.uav_start = p;
       }},
      {"world.uav_y",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         Position p = c.world.start();
         p.y = parse<double>(k, v);
         c.world.uav_start = p;
       }},
      {"valuation",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         if (v == "literal")
           c.world.rule = ValuationRule::Literal;
         else if (v == "proximity")
           c.world.rule = ValuationRule::Proximity;
         else
           throw InvalidConfig("bad value '" + v + "' for " + k +
                               " (literal|proximity)");
       }},
      {"similarity",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         if (v == "mean")
           c.world.aggregation = SimilarityAggregation::Mean;
         else if (v == "min")
           c.world.aggregation = SimilarityAggregation::Min;
         else
           throw InvalidConfig("bad value '" + v + "' for " + k + " (mean|min)");
       }},
  };
  return table;
}

} // namespace

void ExperimentConfig::validate() const {
  net.validate();
  try {
    distribution.validate();
  } catch (const InvalidInput &e) {
    throw InvalidConfig(e.what());
  }
  if (cases < 1)
    throw InvalidConfig("cases must be at least 1");
  if (test_samples < 1)
    throw InvalidConfig("test_samples must be at least 1");
  if (max_rounds < 1)
    throw InvalidConfig("max_rounds must be at least 1");
}

std::vector<Setting> parse_settings(std::istream &in) {
  std::vector<Setting> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty())
      continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("config line " + std::to_string(line_no) +
                          ": expected key = value");
    std::string key = trim(body.substr(0, eq));
    if (key.empty())
      throw InvalidConfig("config line " + std::to_string(line_no) +
                          ": empty key");
    out.emplace_back(std::move(key), trim(body.substr(eq + 1)));
  }
  return out;
}

std::vector<Setting> read_settings(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidConfig("cannot read config file " + path.string());
  return parse_settings(in);
}

void apply_setting(ExperimentConfig &config, const std::string &key,
                   const std::string &value) {
  const auto &table = handlers();
  const auto it = table.find(key);
  if (it == table.end())
    throw InvalidConfig("unknown config key '" + key + "'");
  it->second(config, key, value);
}

void apply_settings(ExperimentConfig &config,
                    const std::vector<Setting> &settings) {
  for (const auto &[key, value] : settings)
    apply_setting(config, key, value);
}

} // namespace airnet
