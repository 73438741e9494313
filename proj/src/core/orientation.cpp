#include "poincare/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "poincare/error.hpp"

namespace poincare {

namespace {

void require_projectable(const Patch& w) {
  require(w.rows() >= 2 && w.cols() >= 2, "orientation needs at least a 2x2 patch, got " +
                                              std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
}

void require_zero_mean(const Patch& w) {
  double sum = 0.0, scale = 1.0;
  for (double v : w.values()) {
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  if (std::abs(sum) > 1e-9 * static_cast<double>(w.size()) * scale) {
    fail(ErrorKind::Numeric, "projector input is not zero-mean (sum " + std::to_string(sum) + ")");
  }
}

double horizontal(const Patch& w) {
  const std::size_t M = w.rows(), N = w.cols();
  double acc = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += w(i, j);
    acc += std::abs(s);
  }
  return acc / static_cast<double>(M * N);
}

double vertical(const Patch& w) {
  const std::size_t M = w.rows(), N = w.cols();
  double acc = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < M; ++i) s += w(i, j);
    acc += std::abs(s);
  }
  return acc / static_cast<double>(M * N);
}

double ray_term(double sum, std::size_t len) { return (1.0 / static_cast<double>(len)) * std::abs(sum); }

}  // namespace

double projector_rectangular(const Patch& w, Direction k) {
  require_projectable(w);
  const std::size_t M = w.rows(), N = w.cols();
  switch (k) {
    case Direction::Horizontal:
      return horizontal(w);
    case Direction::Vertical:
      return vertical(w);
    case Direction::Diagonal135: {
      // Upper-right part: diagonals starting at (0, d), d = 0..N-1.
      double upper = 0.0;
      for (std::size_t d = 0; d < N; ++d) {
        const std::size_t len = std::min(M, N - d);
        double s = 0.0;
        for (std::size_t t = 0; t < len; ++t) s += w(t, t + d);
        upper += ray_term(s, len);
      }
      // Lower-left part: diagonals starting at (M - d, 0), d = 1..M-1.
      double lower = 0.0;
      for (std::size_t d = 1; d < M; ++d) {
        const std::size_t len = std::min(N, d);
        double s = 0.0;
        for (std::size_t t = 0; t < len; ++t) s += w(M - d + t, t);
        lower += ray_term(s, len);
      }
      return upper / static_cast<double>(N) + lower / static_cast<double>(M - 1);
    }
    case Direction::Diagonal45: {
      // Upper-left part: anti-diagonals starting at (d - 1, 0), d = 1..M.
      double upper = 0.0;
      for (std::size_t d = 1; d <= M; ++d) {
        const std::size_t len = std::min(N, d);
        double s = 0.0;
        for (std::size_t t = 0; t < len; ++t) s += w(d - 1 - t, t);
        upper += ray_term(s, len);
      }
      // Lower-right part: anti-diagonals starting at (M - 1, d - 1), d = 2..N.
      // The row index is anchored at the last row M; the rectangular form is
      // only in bounds that way.
      double lower = 0.0;
      for (std::size_t d = 2; d <= N; ++d) {
        const std::size_t last = std::min(N, M + d - 1);
        const std::size_t len = last - d + 1;
        double s = 0.0;
        for (std::size_t j = d; j <= last; ++j) s += w(M - j + d - 1, j - 1);
        lower += ray_term(s, len);
      }
      return upper / static_cast<double>(M) + lower / static_cast<double>(N - 1);
    }
  }
  return 0.0;
}

double projector_square(const Patch& w, Direction k) {
  require_projectable(w);
  require(w.rows() == w.cols(), "square projector form needs a square patch");
  const std::size_t M = w.rows();
  switch (k) {
    case Direction::Horizontal:
      return horizontal(w);
    case Direction::Vertical:
      return vertical(w);
    case Direction::Diagonal135: {
      double upper = 0.0;
      for (std::size_t d = 0; d < M; ++d) {
        double s = 0.0;
        for (std::size_t t = 0; t < M - d; ++t) s += w(t, t + d);
        upper += ray_term(s, M - d);
      }
      double lower = 0.0;
      for (std::size_t d = 1; d < M; ++d) {
        double s = 0.0;
        for (std::size_t t = 0; t < d; ++t) s += w(M - d + t, t);
        lower += ray_term(s, d);
      }
      return upper / static_cast<double>(M) + lower / static_cast<double>(M - 1);
    }
    case Direction::Diagonal45: {
      double upper = 0.0;
      for (std::size_t d = 1; d <= M; ++d) {
        double s = 0.0;
        for (std::size_t t = 0; t < d; ++t) s += w(d - 1 - t, t);
        upper += ray_term(s, d);
      }
      double lower = 0.0;
      for (std::size_t d = 2; d <= M; ++d) {
        double s = 0.0;
        for (std::size_t j = d; j <= M; ++j) s += w(M - j + d - 1, j - 1);
        lower += ray_term(s, M - d + 1);
      }
      return upper / static_cast<double>(M) + lower / static_cast<double>(M - 1);
    }
  }
  return 0.0;
}

double projector(const ZeroMeanPatch& w, Direction k) {
  require_projectable(w.values);
  require_zero_mean(w.values);
  return w.values.rows() == w.values.cols() ? projector_square(w.values, k) : projector_rectangular(w.values, k);
}

RaySet ray_set(std::size_t rows, std::size_t cols, Direction k) {
  require(rows >= 1 && cols >= 1, "ray set needs a nonempty patch");
  RaySet rs{k, {}, {}};
  switch (k) {
    case Direction::Horizontal:
      for (std::size_t i = 0; i < rows; ++i) {
        auto& ray = rs.rays.emplace_back();
        for (std::size_t j = 0; j < cols; ++j) ray.push_back({i, j});
      }
      rs.group.assign(rs.rays.size(), 0);
      return rs;
    case Direction::Vertical:
      for (std::size_t j = 0; j < cols; ++j) {
        auto& ray = rs.rays.emplace_back();
        for (std::size_t i = 0; i < rows; ++i) ray.push_back({i, j});
      }
      rs.group.assign(rs.rays.size(), 0);
      return rs;
    case Direction::Diagonal135:
    case Direction::Diagonal45: {
      // Bucket every pixel by its line key: i - j for 135 deg, i + j for 45 deg.
      std::map<long, std::vector<PixelIndex>> lines;
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
          const long key = k == Direction::Diagonal135 ? static_cast<long>(i) - static_cast<long>(j)
                                                       : static_cast<long>(i + j);
          lines[key].push_back({i, j});
        }
      }
      for (auto& [key, ray] : lines) {
        const bool first_group =
            k == Direction::Diagonal135
                ? std::any_of(ray.begin(), ray.end(), [](const PixelIndex& p) { return p.row == 0; })
                : std::any_of(ray.begin(), ray.end(), [](const PixelIndex& p) { return p.col == 0; });
        rs.rays.push_back(std::move(ray));
        rs.group.push_back(first_group ? 0 : 1);
      }
      return rs;
    }
  }
  return rs;
}

double brute_force_projector(const ZeroMeanPatch& w, Direction k) {
  const RaySet rs = ray_set(w.values.rows(), w.values.cols(), k);
  std::array<double, 2> sum{0.0, 0.0};
  std::array<std::size_t, 2> count{0, 0};
  for (std::size_t r = 0; r < rs.ray_count(); ++r) {
    double s = 0.0;
    for (const auto& px : rs.rays[r]) s += w.values(px.row, px.col);
    const auto g = static_cast<std::size_t>(rs.group[r]);
    sum[g] += std::abs(s / static_cast<double>(rs.rays[r].size()));
    ++count[g];
  }
  double out = 0.0;
  for (std::size_t g = 0; g < 2; ++g) {
    if (count[g] > 0) out += sum[g] / static_cast<double>(count[g]);
  }
  return out;
}

ProjectorSet normalize(const std::array<double, 4>& raw) {
  ProjectorSet ps;
  ps.raw = raw;
  const double hv = std::hypot(raw[0], raw[1]);
  const double dd = std::hypot(raw[2], raw[3]);
  ps.degenerate_hv = hv < kDegenerateEpsilon;
  ps.degenerate_diag = dd < kDegenerateEpsilon;
  if (!ps.degenerate_hv) {
    ps.normalized[0] = raw[0] / hv;
    ps.normalized[1] = raw[1] / hv;
  }
  if (!ps.degenerate_diag) {
    ps.normalized[2] = raw[2] / dd;
    ps.normalized[3] = raw[3] / dd;
  }
  return ps;
}

double orientation_from_normalized(double r_h, double r_v, double r_d1, double r_d2) {
  const double alpha = std::atan2(r_v, r_h);
  const double psi = r_d1 >= r_d2 ? alpha : std::numbers::pi - alpha;
  return psi >= std::numbers::pi ? 0.0 : psi;
}

OrientationEstimate dominant_orientation(const Patch& p) {
  require_projectable(p);
  const ZeroMeanPatch w = zero_mean(p);
  std::array<double, 4> raw{};
  for (Direction k : kDirections) raw[static_cast<int>(k)] = projector(w, k);

  OrientationEstimate est;
  est.projectors = normalize(raw);
  if (est.projectors.degenerate_hv) return est;
  const auto& r = est.projectors.normalized;
  est.psi = orientation_from_normalized(r[0], r[1], r[2], r[3]);
  est.confident = true;
  return est;
}

}  // namespace poincare
