#include "airnet/checkpoint.hpp"

#include "airnet/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace airnet {

namespace {

constexpr const char *kMagic = "airnet-checkpoint";

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void malformed(const std::string &what) {
  throw CheckpointError(CheckpointError::Kind::Malformed,
                        "malformed checkpoint: " + what);
}

class LineReader {
public:
  explicit LineReader(std::istream &in) : in_(in) {}

  std::vector<std::string> next(const char *expecting) {
    std::string line;
    if (!std::getline(in_, line))
      malformed(std::string("unexpected end of file, expected ") + expecting);
    ++line_no_;
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string t; ss >> t;)
      tokens.push_back(std::move(t));
    return tokens;
  }

  std::string value_of(const std::string &key) {
    const auto tokens = next(key.c_str());
    if (tokens.size() != 2 || tokens[0] != key)
      malformed("line " + std::to_string(line_no_) + ": expected '" + key +
                " <value>'");
    return tokens[1];
  }

  std::size_t line_no() const { return line_no_; }

private:
  std::istream &in_;
  std::size_t line_no_ = 0;
};

template <typename T> T parse_number(const std::string &text, const char *what) {
  T value{};
  const char *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    malformed(std::string("bad ") + what + " '" + text + "'");
  return value;
}

void read_array(LineReader &reader, const char *name,
                const MonotoneNetParams &shape, std::vector<double> &out) {
  const auto header = reader.next(name);
  if (header.size() != 1 || header[0] != name)
    malformed(std::string("expected '") + name + "' section");
  const std::size_t rows = shape.n_bidders * shape.groups;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto tokens = reader.next(name);
    if (tokens.size() != shape.units)
      malformed(std::string(name) + " row " + std::to_string(r) + " has " +
                std::to_string(tokens.size()) + " values, expected " +
                std::to_string(shape.units));
    for (std::size_t j = 0; j < shape.units; ++j)
      out[r * shape.units + j] = parse_number<double>(tokens[j], name);
  }
}

} // namespace

void save_params(const std::filesystem::path &path, const Checkpoint &ckpt) {
  const MonotoneNetParams &p = ckpt.params;
  std::ostringstream out;
  out << kMagic << '\n'
      << "format_version " << kCheckpointVersion << '\n'
      << "n_bidders " << p.n_bidders << '\n'
      << "groups " << p.groups << '\n'
      << "linear_units " << p.units << '\n'
      << "kappa " << format_real(ckpt.kappa) << '\n'
      << "seed " << ckpt.seed << '\n'
      << "iterations " << ckpt.iterations << '\n'
      << "dist_lower " << format_real(ckpt.distribution.lower) << '\n'
      << "dist_upper " << format_real(ckpt.distribution.upper) << '\n';
  for (const auto &[name, values] :
       {std::pair{"theta", &p.theta}, std::pair{"beta", &p.beta}}) {
    out << name << '\n';
    for (std::size_t r = 0; r < p.n_bidders * p.groups; ++r) {
      for (std::size_t j = 0; j < p.units; ++j)
        out << (j ? " " : "") << format_real((*values)[r * p.units + j]);
      out << '\n';
    }
  }
  out << "end\n";

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file)
    throw IoError("cannot write checkpoint " + path.string());
  file << out.str();
  if (!file.flush())
    throw IoError("failed writing checkpoint " + path.string());
}

Checkpoint load_params(const std::filesystem::path &path,
                       std::optional<NetShape> expected) {
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw IoError("cannot open checkpoint " + path.string());
  LineReader reader(file);

  const auto magic = reader.next("header");
  if (magic.size() != 1 || magic[0] != kMagic)
    malformed("missing 'airnet-checkpoint' header");
  const int version =
      parse_number<int>(reader.value_of("format_version"), "format_version");
  if (version != kCheckpointVersion)
    throw CheckpointError(CheckpointError::Kind::VersionMismatch,
                          "checkpoint format_version " +
                              std::to_string(version) + " unsupported (expected " +
                              std::to_string(kCheckpointVersion) + ")");

  const auto n = parse_number<std::size_t>(reader.value_of("n_bidders"), "n_bidders");
  const auto k = parse_number<std::size_t>(reader.value_of("groups"), "groups");
  const auto j = parse_number<std::size_t>(reader.value_of("linear_units"), "linear_units");
  if (n < 2 || k < 1 || j < 1)
    malformed("dimensions must satisfy n_bidders >= 2, groups >= 1, linear_units >= 1");
  if (expected && (expected->n_bidders != n || expected->groups != k ||
                   expected->units != j)) {
    throw CheckpointError(
        CheckpointError::Kind::DimensionMismatch,
        "checkpoint has N=" + std::to_string(n) + " K=" + std::to_string(k) +
            " J=" + std::to_string(j) + ", expected N=" +
            std::to_string(expected->n_bidders) + " K=" +
            std::to_string(expected->groups) + " J=" +
            std::to_string(expected->units));
  }

  Checkpoint ckpt;
  ckpt.params = MonotoneNetParams(n, k, j);
  ckpt.kappa = parse_number<double>(reader.value_of("kappa"), "kappa");
  ckpt.seed = parse_number<std::uint64_t>(reader.value_of("seed"), "seed");
  ckpt.iterations =
      parse_number<std::size_t>(reader.value_of("iterations"), "iterations");
  ckpt.distribution.lower =
      parse_number<double>(reader.value_of("dist_lower"), "dist_lower");
  ckpt.distribution.upper =
      parse_number<double>(reader.value_of("dist_upper"), "dist_upper");
  try {
    ckpt.distribution.validate();
  } catch (const InvalidInput &e) {
    malformed(e.what());
  }

  read_array(reader, "theta", ckpt.params, ckpt.params.theta);
  read_array(reader, "beta", ckpt.params, ckpt.params.beta);
  const auto end = reader.next("end");
  if (end.size() != 1 || end[0] != "end")
    malformed("missing 'end' marker");
  return ckpt;
}

} // namespace airnet
