#include "poincare/patch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "poincare/error.hpp"

namespace poincare {

Patch::Patch(std::size_t rows, std::size_t cols, double fill, int levels)
    : Patch(rows, cols, std::vector<double>(rows * cols, fill), levels) {}

Patch::Patch(std::size_t rows, std::size_t cols, std::vector<double> values, int levels)
    : rows_(rows), cols_(cols), levels_(levels), values_(std::move(values)) {
  require(rows >= 1 && cols >= 1, "patch dimensions must be positive");
  require(levels >= 1, "intensity level count must be positive");
  require(values_.size() == rows * cols, "patch value count does not match " + std::to_string(rows) + "x" +
                                             std::to_string(cols));
  for (double v : values_) require(std::isfinite(v), "patch values must be finite");
}

double Patch::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

Patch Patch::crop(std::size_t top, std::size_t left, std::size_t rows, std::size_t cols) const {
  require(top + rows <= rows_ && left + cols <= cols_, "crop window exceeds patch bounds");
  std::vector<double> out;
  out.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto first = values_.begin() + static_cast<std::ptrdiff_t>((top + i) * cols_ + left);
    out.insert(out.end(), first, first + static_cast<std::ptrdiff_t>(cols));
  }
  return Patch(rows, cols, std::move(out), levels_);
}

std::size_t Histogram::populated_count() const noexcept {
  return static_cast<std::size_t>(std::count(populated.begin(), populated.end(), true));
}

ZeroMeanPatch zero_mean(const Patch& p) {
  const double mu = p.mean();
  std::vector<double> w(p.values().begin(), p.values().end());
  for (double& v : w) v -= mu;
  return {Patch(p.rows(), p.cols(), std::move(w), p.levels()), mu};
}

double normalized_mean_intensity(const Patch& p) {
  const double sum = std::accumulate(p.values().begin(), p.values().end(), 0.0);
  return sum / (static_cast<double>(p.levels()) * static_cast<double>(p.size()));
}

Histogram histogram(const Patch& p, std::size_t bins, double keep_fraction) {
  require(bins >= 2, "histogram needs at least two bins");
  require(keep_fraction >= 0.0 && keep_fraction < 1.0, "keep_fraction must lie in [0, 1)");

  Histogram h;
  h.counts.assign(bins, 0);
  const double scale = static_cast<double>(bins) / static_cast<double>(p.levels());
  for (double v : p.values()) {
    const double pos = std::floor(v * scale);
    const auto bin = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    ++h.counts[bin];
  }

  const std::size_t max_count = *std::max_element(h.counts.begin(), h.counts.end());
  const double threshold = keep_fraction * static_cast<double>(max_count);
  h.populated.assign(bins, false);
  h.mass.assign(bins, 0.0);
  std::size_t kept = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (h.counts[b] > 0 && static_cast<double>(h.counts[b]) >= threshold) {
      h.populated[b] = true;
      kept += h.counts[b];
    }
  }
  for (std::size_t b = 0; b < bins; ++b) {
    if (h.populated[b]) h.mass[b] = static_cast<double>(h.counts[b]) / static_cast<double>(kept);
  }
  return h;
}

double entropy(const Histogram& h) {
  double e = 0.0;
  for (std::size_t b = 0; b < h.bin_count(); ++b) {
    if (h.populated[b] && h.mass[b] > 0.0) e -= h.mass[b] * std::log2(h.mass[b]);
  }
  return std::max(e, 0.0);
}

double psnr(const Image& a, const Image& b, double peak) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorKind::Numeric, "psnr: dimension mismatch " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                 " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  double sse = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a.values()[k] - b.values()[k];
    sse += d * d;
  }
  if (sse == 0.0) return kPsnrInfinity;
  const double mse = sse / static_cast<double>(a.size());
  return 10.0 * std::log10(peak * peak / mse);
}

std::vector<Patch> extract_patches(const Image& image, std::size_t size, std::size_t stride) {
  require(stride >= 1, "stride must be at least 1");
  require(size >= 1 && size <= image.rows() && size <= image.cols(),
          "patch size " + std::to_string(size) + " exceeds image " + std::to_string(image.rows()) + "x" +
              std::to_string(image.cols()));
  std::vector<Patch> out;
  for (std::size_t i = 0; i + size <= image.rows(); i += stride) {
    for (std::size_t j = 0; j + size <= image.cols(); j += stride) out.push_back(image.crop(i, j, size, size));
  }
  return out;
}

}  // namespace poincare
