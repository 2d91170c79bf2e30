#pragma once

#include "airnet/valuation.hpp"

#include <filesystem>
#include <istream>
#include <ostream>

namespace airnet {

// Portable graymap ingestion. Both plain (P2) and raw (P5) encodings are
// accepted; samples are scaled by 1/maxval into [0, 1]. Raw files with
// maxval > 255 use two big-endian bytes per sample.

GrayImage read_pgm(std::istream &in);
GrayImage read_pgm(const std::filesystem::path &path);

enum class PgmEncoding { Plain, Raw };

/// Writes 8-bit samples (pixels are clamped to [0, 1] and rounded).
void write_pgm(std::ostream &out, const GrayImage &image,
               PgmEncoding encoding = PgmEncoding::Raw);
void write_pgm(const std::filesystem::path &path, const GrayImage &image,
               PgmEncoding encoding = PgmEncoding::Raw);

} // namespace airnet
