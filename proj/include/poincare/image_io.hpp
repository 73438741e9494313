#pragma once

#include <string>
#include <vector>

#include "poincare/patch.hpp"

namespace poincare {

// Binary 8-bit PGM (P5).
Image read_pgm(const std::string& path);

// Values are rounded and clamped to [0, 255]. Each comment becomes a "# ..."
// header line.
void write_pgm(const std::string& path, const Image& image, const std::vector<std::string>& comments = {});

// 8-bit PNG; color input is reduced with luminance weights 0.299/0.587/0.114.
Image read_png(const std::string& path);

// Dispatches on the file signature.
Image load_image(const std::string& path);

}  // namespace poincare
