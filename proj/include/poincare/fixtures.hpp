#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "poincare/patch.hpp"
#include "poincare/random.hpp"

namespace poincare {

// Binary horizontal lines: rows with (i mod period) < width are foreground.
struct LinePattern {
  std::size_t width = 1;
  std::size_t period = 3;
  double foreground = 255.0;
  double background = 0.0;
};

// Thin white lines on black, one line per patch height (period n + 1). The
// projector ratio tracks the angle only while a row crosses at most about one
// line period, so the rotation sequences use this sparse pattern.
LinePattern sparse_lines(std::size_t n);

// Horizontal lines drawn on a canvas large enough for any rotation.
Patch line_canvas(std::size_t n, const LinePattern& pattern);

// Center n x n crop of `canvas` rotated by `angle` (bilinear).
Patch rotated_crop(const Patch& canvas, std::size_t n, double angle);

// Clean line patch with orientation `angle`.
Patch line_patch(std::size_t n, double angle);
Patch line_patch(std::size_t n, double angle, const LinePattern& pattern);

// Gaussian blur (reflected borders, skipped when sigma <= 0) followed by
// additive white Gaussian noise whose variance is var(blurred) / 10^(snr/10).
Patch degrade(const Patch& p, double snr_db, double blur_sigma, Rng& rng);

// Line canvas degraded first and then rotated, as in the noisy rotation
// sequences.
Patch degraded_line_patch(std::size_t n, double angle, double snr_db, double blur_sigma, Rng& rng);

// Min-max rescale to [0, 255]; constant patches map to 0.
Patch to_intensity_range(const Patch& p);

// Concentric rings around the patch center; every orientation occurs locally.
Patch ring_patch(std::size_t n, double period);

struct LabeledPatch {
  std::string label;
  Patch patch;
};

// Seven fully oriented stripe patches of assorted orientation and brightness
// plus one concentric-ring patch without a dominant direction, all 24 x 24.
std::vector<LabeledPatch> eight_patch_fixture();

// 18 clean patches rotated 0..170 degrees in 10 degree steps, labeled
// "clean", followed by degraded counterparts (blur sigma 1, SNR 0 dB, mapped
// back to [0, 255]) labeled "degraded".
std::vector<LabeledPatch> rotation_fixture(std::size_t n, std::uint64_t seed);

}  // namespace poincare
