#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "poincare/patch.hpp"

namespace poincare {

// Angles in this library are measured in matrix coordinates: x runs along
// columns, y runs down the rows. A horizontal stripe has orientation 0, a
// vertical one pi/2 and a stripe running from the top-left corner to the
// bottom-right corner (the Diagonal135 rays) pi/4.
enum class Direction : int { Horizontal = 0, Vertical = 1, Diagonal135 = 2, Diagonal45 = 3 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::Horizontal, Direction::Vertical,
                                                         Direction::Diagonal135, Direction::Diagonal45};

struct PixelIndex {
  std::size_t row;
  std::size_t col;
};

// Explicit enumeration of the digital rays of one direction. Diagonal rays
// are split in the two groups the projector averages separately: rays that
// enter through the first row (135 deg) or first column (45 deg) form group 0,
// the remaining rays group 1.
struct RaySet {
  Direction direction;
  std::vector<std::vector<PixelIndex>> rays;
  std::vector<int> group;

  std::size_t ray_count() const noexcept { return rays.size(); }
};

RaySet ray_set(std::size_t rows, std::size_t cols, Direction k);

// Closed-form Radon-like projector of a zero-mean patch. Square patches use the
// simplified diagonal forms. Throws ErrorKind::Numeric if w is not zero-mean.
double projector(const ZeroMeanPatch& w, Direction k);

// The two closed-form variants, exposed so they can be checked against each
// other and against the ray oracle.
double projector_rectangular(const Patch& w, Direction k);
double projector_square(const Patch& w, Direction k);

// Oracle: walks ray_set() and averages |ray mean| per ray group.
double brute_force_projector(const ZeroMeanPatch& w, Direction k);

struct ProjectorSet {
  std::array<double, 4> raw{};         // R_h, R_v, R_d1, R_d2
  std::array<double, 4> normalized{};  // r_h, r_v, r_d1, r_d2
  bool degenerate_hv = false;
  bool degenerate_diag = false;

  double r(Direction k) const { return normalized[static_cast<int>(k)]; }
  double R(Direction k) const { return raw[static_cast<int>(k)]; }
};

inline constexpr double kDegenerateEpsilon = 1e-12;

ProjectorSet normalize(const std::array<double, 4>& raw);

struct OrientationEstimate {
  double psi = 0.0;  // [0, pi)
  bool confident = false;
  ProjectorSet projectors;
};

// psi from already-normalized projector values; any normalization sharing a
// common factor between r_h and r_v and between r_d1 and r_d2 gives the same
// angle.
double orientation_from_normalized(double r_h, double r_v, double r_d1, double r_d2);

// Requires at least a 2x2 patch.
OrientationEstimate dominant_orientation(const Patch& p);

}  // namespace poincare
