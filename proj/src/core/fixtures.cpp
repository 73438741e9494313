#include "poincare/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "poincare/error.hpp"
#include "poincare/transform.hpp"

namespace poincare {

namespace {

std::vector<double> gaussian_kernel(double sigma) {
  const auto radius = static_cast<long>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (long t = -radius; t <= radius; ++t) {
    const double v = std::exp(-0.5 * static_cast<double>(t * t) / (sigma * sigma));
    k[static_cast<std::size_t>(t + radius)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

long reflect(long i, long n) {
  while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
  return i;
}

Patch blur(const Patch& p, double sigma) {
  const auto k = gaussian_kernel(sigma);
  const long r = static_cast<long>(k.size() / 2);
  const long M = static_cast<long>(p.rows()), N = static_cast<long>(p.cols());
  Patch tmp(p.rows(), p.cols(), 0.0, p.levels());
  for (long i = 0; i < M; ++i) {
    for (long j = 0; j < N; ++j) {
      double acc = 0.0;
      for (long t = -r; t <= r; ++t) acc += k[static_cast<std::size_t>(t + r)] * p(i, reflect(j + t, N));
      tmp(i, j) = acc;
    }
  }
  Patch out(p.rows(), p.cols(), 0.0, p.levels());
  for (long i = 0; i < M; ++i) {
    for (long j = 0; j < N; ++j) {
      double acc = 0.0;
      for (long t = -r; t <= r; ++t) acc += k[static_cast<std::size_t>(t + r)] * tmp(reflect(i + t, M), j);
      out(i, j) = acc;
    }
  }
  return out;
}

// Stripes along i - j = const (top-left to bottom-right) or i + j = const.
Patch diagonal_stripes(std::size_t n, bool descending, std::size_t width, std::size_t period, double fg, double bg) {
  Patch p(n, n, bg);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = descending ? i + n - j : i + j;
      if (d % period < width) p(i, j) = fg;
    }
  }
  return p;
}

}  // namespace

LinePattern sparse_lines(std::size_t n) { return {std::max<std::size_t>(1, (n + 5) / 10), n + 1, 255.0, 0.0}; }

Patch line_canvas(std::size_t n, const LinePattern& pattern) {
  require(n >= 1, "patch size must be positive");
  require(pattern.period >= 1 && pattern.width <= pattern.period, "line width must not exceed the period");
  std::size_t c = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * std::numbers::sqrt2)) + 4;
  if ((c - n) % 2) ++c;
  const std::size_t offset = (c - n) / 2;
  Patch canvas(c, c, pattern.background);
  for (std::size_t i = 0; i < c; ++i) {
    // Phase the lines from the top row of the final crop.
    const std::size_t phase = (i + pattern.period * c - offset) % pattern.period;
    if (phase < pattern.width) {
      for (std::size_t j = 0; j < c; ++j) canvas(i, j) = pattern.foreground;
    }
  }
  return canvas;
}

Patch rotated_crop(const Patch& canvas, std::size_t n, double angle) {
  require(canvas.rows() >= n && canvas.cols() >= n && (canvas.rows() - n) % 2 == 0 && (canvas.cols() - n) % 2 == 0,
          "canvas does not center an n x n crop");
  const Patch rotated = rotate_bilinear(canvas, angle);
  return rotated.crop((canvas.rows() - n) / 2, (canvas.cols() - n) / 2, n, n);
}

Patch line_patch(std::size_t n, double angle) { return line_patch(n, angle, sparse_lines(n)); }

Patch line_patch(std::size_t n, double angle, const LinePattern& pattern) {
  return rotated_crop(line_canvas(n, pattern), n, angle);
}

Patch degrade(const Patch& p, double snr_db, double blur_sigma, Rng& rng) {
  Patch out = blur_sigma > 0.0 ? blur(p, blur_sigma) : p;
  const double mu = out.mean();
  double var = 0.0;
  for (double v : out.values()) var += (v - mu) * (v - mu);
  var /= static_cast<double>(out.size());
  const double sigma = std::sqrt(var / std::pow(10.0, snr_db / 10.0));
  for (double& v : out.values()) v += sigma * rng.normal();
  return out;
}

Patch degraded_line_patch(std::size_t n, double angle, double snr_db, double blur_sigma, Rng& rng) {
  return rotated_crop(degrade(line_canvas(n, sparse_lines(n)), snr_db, blur_sigma, rng), n, angle);
}

Patch to_intensity_range(const Patch& p) {
  const auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
  const double span = *hi - *lo;
  Patch out(p.rows(), p.cols(), 0.0, p.levels());
  if (span <= 0.0) return out;
  for (std::size_t k = 0; k < p.size(); ++k) out.values()[k] = 255.0 * (p.values()[k] - *lo) / span;
  return out;
}

Patch ring_patch(std::size_t n, double period) {
  require(period > 0.0, "ring period must be positive");
  const double c = (static_cast<double>(n) - 1.0) / 2.0;
  Patch p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double r = std::hypot(static_cast<double>(i) - c, static_cast<double>(j) - c);
      p(i, j) = 127.5 * (1.0 + std::cos(2.0 * std::numbers::pi * r / period));
    }
  }
  return p;
}

std::vector<LabeledPatch> eight_patch_fixture() {
  constexpr std::size_t n = 24;
  std::vector<LabeledPatch> out;
  out.push_back({"horizontal", line_patch(n, 0.0, {2, 4, 255.0, 0.0})});
  out.push_back({"vertical", line_patch(n, std::numbers::pi / 2, {1, 3, 200.0, 40.0})});
  out.push_back({"diagonal-45", diagonal_stripes(n, true, 2, 5, 255.0, 0.0)});
  out.push_back({"diagonal-135", diagonal_stripes(n, false, 3, 7, 180.0, 20.0)});
  out.push_back({"horizontal-wide", line_patch(n, 0.0, {4, 6, 255.0, 100.0})});
  out.push_back({"vertical-dark", line_patch(n, std::numbers::pi / 2, {1, 4, 90.0, 0.0})});
  out.push_back({"diagonal-bright", diagonal_stripes(n, false, 2, 5, 255.0, 150.0)});
  out.push_back({"rings", ring_patch(n, 5.0)});
  return out;
}

std::vector<LabeledPatch> rotation_fixture(std::size_t n, std::uint64_t seed) {
  std::vector<LabeledPatch> out;
  const Patch canvas = line_canvas(n, sparse_lines(n));
  for (int step = 0; step < 18; ++step) {
    out.push_back({"clean", rotated_crop(canvas, n, step * std::numbers::pi / 18.0)});
  }
  Rng rng(seed);
  for (int step = 0; step < 18; ++step) {
    const Patch noisy = rotated_crop(degrade(canvas, 0.0, 1.0, rng), n, step * std::numbers::pi / 18.0);
    out.push_back({"degraded", to_intensity_range(noisy)});
  }
  return out;
}

}  // namespace poincare
