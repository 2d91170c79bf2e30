#include "airnet/pgm.hpp"

#include "airnet/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

namespace airnet {

namespace {

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream &in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

long read_header_int(std::istream &in, const char *what) {
  skip_separators(in);
  long value = -1;
  if (!(in >> value) || value < 0)
    throw InvalidInput(std::string("pgm: bad ") + what);
  return value;
}

} // namespace

GrayImage read_pgm(std::istream &in) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' ||
      (magic[1] != '2' && magic[1] != '5'))
    throw InvalidInput("pgm: expected P2 or P5 magic number");
  const bool raw = magic[1] == '5';

  const long cols = read_header_int(in, "width");
  const long rows = read_header_int(in, "height");
  const long maxval = read_header_int(in, "maxval");
  if (cols == 0 || rows == 0)
    throw InvalidInput("pgm: empty image");
  if (maxval < 1 || maxval > 65535)
    throw InvalidInput("pgm: maxval must be in [1, 65535]");

  GrayImage img(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  const double scale = 1.0 / static_cast<double>(maxval);

  if (raw) {
    // Exactly one whitespace byte separates the header from the raster.
    if (!std::isspace(in.get()))
      throw InvalidInput("pgm: missing separator after header");
    const bool wide = maxval > 255;
    for (double &px : img.pixels) {
      unsigned value = 0;
      const int hi = in.get();
      if (hi == EOF)
        throw InvalidInput("pgm: truncated raster");
      value = static_cast<unsigned>(hi);
      if (wide) {
        const int lo = in.get();
        if (lo == EOF)
          throw InvalidInput("pgm: truncated raster");
        value = (value << 8) | static_cast<unsigned>(lo);
      }
      if (value > static_cast<unsigned>(maxval))
        throw InvalidInput("pgm: sample exceeds maxval");
      px = value * scale;
    }
  } else {
    for (double &px : img.pixels) {
      const long value = read_header_int(in, "sample");
      if (value > maxval)
        throw InvalidInput("pgm: sample exceeds maxval");
      px = static_cast<double>(value) * scale;
    }
  }
  return img;
}

GrayImage read_pgm(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream &out, const GrayImage &image,
               PgmEncoding encoding) {
  const bool raw = encoding == PgmEncoding::Raw;
  out << (raw ? "P5" : "P2") << '\n'
      << image.cols << ' ' << image.rows << '\n'
      << 255 << '\n';
  for (std::size_t r = 0; r < image.rows; ++r) {
    for (std::size_t c = 0; c < image.cols; ++c) {
      const double px = std::clamp(image(r, c), 0.0, 1.0);
      const auto sample = static_cast<unsigned>(std::lround(px * 255.0));
      if (raw)
        out.put(static_cast<char>(sample));
      else
        out << sample << (c + 1 == image.cols ? '\n' : ' ');
    }
  }
}

void write_pgm(const std::filesystem::path &path, const GrayImage &image,
               PgmEncoding encoding) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot write " + path.string());
  write_pgm(out, image, encoding);
}

} // namespace airnet
