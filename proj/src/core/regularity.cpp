#include "poincare/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "poincare/error.hpp"
#include "poincare/orientation.hpp"

namespace poincare {

void RegularityConfig::validate() const {
  require(ldc_bins >= 2, "ldc_bins must be at least 2");
  require(ldc_window >= 2, "ldc_window must be at least 2");
  require(ldc_threshold_fraction >= 0.0 && ldc_threshold_fraction < 1.0, "ldc_threshold_fraction must lie in [0, 1)");
  require(entropy_keep_fraction >= 0.0 && entropy_keep_fraction < 1.0, "entropy_keep_fraction must lie in [0, 1)");
}

double rho_entropy(const Patch& p, double keep_fraction) {
  require(p.levels() == 256, "entropy regularity is defined for 8-bit patches only (L = 256), got L = " +
                                 std::to_string(p.levels()));
  const double e = entropy(histogram(p, 256, keep_fraction));
  return std::clamp(1.0 - (e - 1.0) / 7.0, 0.0, 1.0);
}

OrientationHistogram block_orientations(const Patch& p, const RegularityConfig& cfg) {
  cfg.validate();
  const std::size_t win = cfg.ldc_window;
  require(p.rows() >= win && p.cols() >= win, "patch " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) +
                                                  " is smaller than the " + std::to_string(win) + "x" +
                                                  std::to_string(win) + " window");
  bool sliding = cfg.ldc_layout == WindowLayout::Sliding;
  if (cfg.ldc_layout == WindowLayout::Auto) sliding = std::min(p.rows(), p.cols()) < 32;
  const std::size_t step = sliding ? 1 : win;

  OrientationHistogram h;
  h.counts.assign(cfg.ldc_bins, 0);
  const double bin_width = std::numbers::pi / static_cast<double>(cfg.ldc_bins);
  for (std::size_t i = 0; i + win <= p.rows(); i += step) {
    for (std::size_t j = 0; j + win <= p.cols(); j += step) {
      const OrientationEstimate est = dominant_orientation(p.crop(i, j, win, win));
      if (!est.confident) {
        ++h.skipped_blocks;
        continue;
      }
      ++h.measured_blocks;
      const auto bin = std::min(static_cast<std::size_t>(est.psi / bin_width), cfg.ldc_bins - 1);
      ++h.counts[bin];
    }
  }

  h.populated.assign(cfg.ldc_bins, false);
  if (h.measured_blocks == 0) return h;
  const std::size_t max_count = *std::max_element(h.counts.begin(), h.counts.end());
  const double threshold = cfg.ldc_threshold_fraction * static_cast<double>(max_count);
  for (std::size_t b = 0; b < cfg.ldc_bins; ++b) {
    if (h.counts[b] > 0 && static_cast<double>(h.counts[b]) >= threshold) {
      h.populated[b] = true;
      ++h.populated_count;
    }
  }
  return h;
}

double rho_ldc(const Patch& p, const RegularityConfig& cfg) {
  require(p.rows() >= kMinLdcPatch && p.cols() >= kMinLdcPatch,
          "LDC regularity needs at least a 7x7 patch, got " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
  const OrientationHistogram h = block_orientations(p, cfg);
  if (h.populated_count == 0) return 0.0;
  const auto B = static_cast<double>(cfg.ldc_bins);
  return (B - static_cast<double>(h.populated_count)) / (B - 1.0);
}

double regularity(const Patch& p, const RegularityConfig& cfg) {
  cfg.validate();
  return cfg.estimator == Estimator::Entropy ? rho_entropy(p, cfg.entropy_keep_fraction) : rho_ldc(p, cfg);
}

}  // namespace poincare
