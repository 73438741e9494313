#include "poincare/transform.hpp"

#include <cmath>
#include <vector>

namespace poincare {

Patch rotate_bilinear(const Patch& p, double angle, double fill) {
  const std::size_t M = p.rows(), N = p.cols();
  const double cy = (static_cast<double>(M) - 1.0) / 2.0;
  const double cx = (static_cast<double>(N) - 1.0) / 2.0;
  const double c = std::cos(angle), s = std::sin(angle);

  auto at = [&](long i, long j) {
    if (i < 0 || j < 0 || i >= static_cast<long>(M) || j >= static_cast<long>(N)) return fill;
    return p(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };

  Patch out(M, N, 0.0, p.levels());
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      const double x = static_cast<double>(j) - cx;
      const double y = static_cast<double>(i) - cy;
      // Inverse rotation back into the source frame.
      const double sx = c * x + s * y + cx;
      const double sy = -s * x + c * y + cy;
      const double fx = std::floor(sx), fy = std::floor(sy);
      const double ax = sx - fx, ay = sy - fy;
      const auto i0 = static_cast<long>(fy), j0 = static_cast<long>(fx);
      out(i, j) = (1 - ay) * ((1 - ax) * at(i0, j0) + ax * at(i0, j0 + 1)) +
                  ay * ((1 - ax) * at(i0 + 1, j0) + ax * at(i0 + 1, j0 + 1));
    }
  }
  return out;
}

Patch flip_columns(const Patch& p) {
  Patch out(p.rows(), p.cols(), 0.0, p.levels());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) out(i, j) = p(i, p.cols() - 1 - j);
  }
  return out;
}

}  // namespace poincare
