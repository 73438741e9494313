#pragma once

#include <cstddef>
#include <vector>

#include "poincare/patch.hpp"

namespace poincare {

enum class Estimator { Entropy, Ldc };

enum class WindowLayout {
  Auto,     // sliding below 32x32, tiled otherwise
  Sliding,  // step 1
  Tiled,    // non-overlapping from the top-left, partial blocks dropped
};

struct RegularityConfig {
  Estimator estimator = Estimator::Ldc;
  std::size_t ldc_window = 8;
  WindowLayout ldc_layout = WindowLayout::Auto;
  std::size_t ldc_bins = 18;
  double ldc_threshold_fraction = 0.05;
  double entropy_keep_fraction = 0.10;

  void validate() const;
};

struct OrientationHistogram {
  std::vector<std::size_t> counts;  // B uniform bins over [0, pi)
  std::vector<bool> populated;
  std::size_t populated_count = 0;  // b
  std::size_t measured_blocks = 0;
  std::size_t skipped_blocks = 0;   // blocks without a confident orientation
};

// rho_E = min(1 - (E - 1)/7, 1), clamped at 0. Tied to 8-bit data (L = 256).
double rho_entropy(const Patch& p, double keep_fraction = 0.10);

OrientationHistogram block_orientations(const Patch& p, const RegularityConfig& cfg);

// (B - b)/(B - 1) for b >= 1. Patches without any oriented block (b = 0) are
// treated as fully irregular, rho = 0. Needs at least a 7x7 patch.
double rho_ldc(const Patch& p, const RegularityConfig& cfg);

// Dispatches on cfg.estimator.
double regularity(const Patch& p, const RegularityConfig& cfg);

inline constexpr std::size_t kMinLdcPatch = 7;

}  // namespace poincare
