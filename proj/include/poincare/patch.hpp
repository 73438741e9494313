#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace poincare {

// Grayscale intensities stored row-major as doubles so that interpolated and
// degraded patches are first-class. `levels` is the number of intensity
// levels L (256 for 8-bit data).
class Patch {
 public:
  Patch() = default;
  Patch(std::size_t rows, std::size_t cols, double fill = 0.0, int levels = 256);
  Patch(std::size_t rows, std::size_t cols, std::vector<double> values, int levels = 256);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }
  int levels() const noexcept { return levels_; }
  bool empty() const noexcept { return values_.empty(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double mean() const noexcept;
  Patch crop(std::size_t top, std::size_t left, std::size_t rows, std::size_t cols) const;

  friend bool operator==(const Patch&, const Patch&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int levels_ = 256;
  std::vector<double> values_;
};

// Whole images share the patch representation.
using Image = Patch;

struct ZeroMeanPatch {
  Patch values;        // w = I - mean(I)
  double source_mean;  // mean(I)
};

struct Histogram {
  std::vector<double> mass;     // renormalized over populated bins, 0 elsewhere
  std::vector<bool> populated;
  std::vector<std::size_t> counts;

  std::size_t bin_count() const noexcept { return mass.size(); }
  std::size_t populated_count() const noexcept;
};

ZeroMeanPatch zero_mean(const Patch& p);

// T = sum(I) / (L*M*N); lies in [0, (L-1)/L] for in-range intensities.
double normalized_mean_intensity(const Patch& p);

// Intensity histogram over [0, L). Bins whose count is zero or below
// keep_fraction * max_count are dropped; the rest are renormalized to sum 1.
Histogram histogram(const Patch& p, std::size_t bins = 256, double keep_fraction = 0.10);

// Shannon entropy in bits over the populated bins.
double entropy(const Histogram& h);

inline constexpr double kPsnrInfinity = std::numeric_limits<double>::infinity();

// 10*log10(peak^2 / MSE); kPsnrInfinity when the images are identical.
double psnr(const Image& a, const Image& b, double peak = 255.0);

// Row-major traversal of size x size windows spaced `stride` apart.
std::vector<Patch> extract_patches(const Image& image, std::size_t size, std::size_t stride);

}  // namespace poincare
