#pragma once

#include <filesystem>

#include "fbsplit/image.hpp"

namespace fbsplit {

/// Reads a P2 (ASCII) or P5 (binary) PGM with maxval <= 255; pixel p maps
/// to p / maxval. Comment lines are skipped.
Image load_pgm(const std::filesystem::path& path);

/// Clamps to [0,1], quantizes to round(255 * p), writes P5 by default.
void save_pgm(const Image& img, const std::filesystem::path& path, bool ascii = false);

}  // namespace fbsplit
