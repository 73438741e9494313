#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace poincare {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double norm() const;
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct SphericalCode {
  std::vector<Vec3> points;
  double min_chordal_distance = 0.0;

  // Provenance: either generated(seed, sweeps) or loaded(path).
  bool generated = false;
  std::uint64_t seed = 0;
  std::size_t sweeps = 0;
  std::string path;

  // Min distance after every accepted sweep (generated codes only).
  std::vector<double> accepted_min_distances;

  std::size_t size() const noexcept { return points.size(); }
};

double min_chordal_distance(std::span<const Vec3> points);

struct CodeGenerationOptions {
  std::uint64_t seed = 1;
  std::size_t max_sweeps = 20000;
  double tol = 1e-12;
  std::size_t relax_iterations = 400;  // per energy exponent; 0 skips relaxation
};

// Max-min point placement by tangential repulsion. Starts from seeded uniform
// points spread by Riesz-energy descent; a sweep moves every point away from its near neighbours and is kept
// only if the minimum distance does not shrink. Rejected sweeps halve the step
// and generation ends once the step can no longer change the minimum distance
// by more than tol.
SphericalCode generate_spherical_code(std::size_t n, const CodeGenerationOptions& opts = {});

// A 3D point read from a text file, with its 1-based source line.
struct SourcedPoint {
  Vec3 point;
  std::size_t line = 0;
};

// Whitespace-separated "x y z" per line, or one coordinate per line (3n
// lines). Blank lines and '#' comments are skipped.
std::vector<SourcedPoint> read_points(const std::string& path);
std::vector<SourcedPoint> read_points(std::istream& in, const std::string& name);

// Points must be unit-norm within 1e-3; they are re-normalized.
SphericalCode load_spherical_code(const std::string& path);

// Arbitrary constellation inside the unit ball (rho <= 1 + 1e-6).
std::vector<Vec3> load_constellation(const std::string& path);

// One "x y z" line per point at full precision, after "# ..." comment lines.
void write_spherical_code(std::ostream& out, std::span<const Vec3> points, const std::vector<std::string>& comments = {});

}  // namespace poincare
