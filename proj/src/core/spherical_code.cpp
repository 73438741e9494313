#include "poincare/spherical_code.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "poincare/error.hpp"
#include "poincare/random.hpp"

namespace poincare {

namespace {

Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 unit(const Vec3& a) { return (1.0 / a.norm()) * a; }

// Exponent of the distance weighting. High values concentrate the push on the
// nearest neighbours, which is what max-min placement cares about.
constexpr double kRepulsionExponent = 24.0;

std::vector<Vec3> repulsion_step(const std::vector<Vec3>& pts, double dmin, double step) {
  const std::size_t n = pts.size();
  std::vector<Vec3> force(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 d = pts[i] - pts[j];
      const double dist = std::max(d.norm(), 1e-300);
      const double w = std::pow(dmin / dist, kRepulsionExponent) / dist;
      force[i] = force[i] + w * d;
      force[j] = force[j] + (-w) * d;
    }
  }
  double fmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    force[i] = force[i] - dot(force[i], pts[i]) * pts[i];
    fmax = std::max(fmax, force[i].norm());
  }
  std::vector<Vec3> out(n);
  const double scale = fmax > 0.0 ? step * dmin / fmax : 0.0;
  for (std::size_t i = 0; i < n; ++i) out[i] = unit(pts[i] + scale * force[i]);
  return out;
}

double riesz_energy(const std::vector<Vec3>& pts, double s) {
  double e = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) e += std::pow(std::max((pts[i] - pts[j]).norm(), 1e-300), -s);
  }
  return e;
}

// Spreads the random start by descending the Riesz s-energy for growing s, so
// the max-min sweeps begin near a good configuration instead of a clustered
// one. Steps are accepted only when the energy drops.
void relax(std::vector<Vec3>& pts, std::size_t iterations) {
  const std::size_t n = pts.size();
  for (double s : {1.0, 4.0, 12.0}) {
    double energy = riesz_energy(pts, s);
    double step = 0.1;
    for (std::size_t it = 0; it < iterations && step > 1e-9; ++it) {
      std::vector<Vec3> grad(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const Vec3 d = pts[i] - pts[j];
          const double dist = std::max(d.norm(), 1e-300);
          const double w = std::pow(dist, -s - 2.0);
          grad[i] = grad[i] + w * d;
          grad[j] = grad[j] + (-w) * d;
        }
      }
      double gmax = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        grad[i] = grad[i] - dot(grad[i], pts[i]) * pts[i];
        gmax = std::max(gmax, grad[i].norm());
      }
      if (gmax == 0.0) break;
      const double scale = step / gmax;
      std::vector<Vec3> trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = unit(pts[i] + scale * grad[i]);
      const double e = riesz_energy(trial, s);
      if (e < energy) {
        pts = std::move(trial);
        energy = e;
        step = std::min(0.5, step * 1.2);
      } else {
        step *= 0.5;
      }
    }
  }
}

[[noreturn]] void parse_error(const std::string& name, std::size_t line, const std::string& what) {
  fail(ErrorKind::Parse, name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double min_chordal_distance(std::span<const Vec3> points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, (points[i] - points[j]).norm());
  }
  return best;
}

SphericalCode generate_spherical_code(std::size_t n, const CodeGenerationOptions& opts) {
  require(n >= 2, "a spherical code needs at least 2 points, got " + std::to_string(n));
  require(opts.tol > 0.0, "tolerance must be positive");

  Rng rng(opts.seed);
  std::vector<Vec3> pts(n);
  for (auto& p : pts) {
    do {
      p = {rng.normal(), rng.normal(), rng.normal()};
    } while (p.norm() < 1e-9);
    p = unit(p);
  }
  relax(pts, opts.relax_iterations);

  SphericalCode code;
  code.generated = true;
  code.seed = opts.seed;
  double dmin = min_chordal_distance(pts);
  double step = 0.5;
  std::size_t sweep = 0;
  for (; sweep < opts.max_sweeps && step * dmin >= opts.tol; ++sweep) {
    std::vector<Vec3> trial = repulsion_step(pts, dmin, step);
    const double trial_min = min_chordal_distance(trial);
    if (trial_min >= dmin) {
      pts = std::move(trial);
      dmin = trial_min;
      code.accepted_min_distances.push_back(dmin);
      step = std::min(1.0, step * 1.25);
    } else {
      step *= 0.5;
    }
  }
  code.points = std::move(pts);
  code.min_chordal_distance = dmin;
  code.sweeps = sweep;
  return code;
}

std::vector<SourcedPoint> read_points(std::istream& in, const std::string& name) {
  std::vector<std::pair<std::vector<double>, std::size_t>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<double> vals;
    std::string tok;
    while (ss >> tok) {
      double v;
      std::size_t used = 0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) parse_error(name, lineno, "not a number: '" + tok + "'");
      if (!std::isfinite(v)) parse_error(name, lineno, "non-finite coordinate");
      vals.push_back(v);
    }
    if (!vals.empty()) rows.emplace_back(std::move(vals), lineno);
  }

  std::vector<SourcedPoint> out;
  const bool flat = !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.first.size() == 1; });
  if (flat) {
    if (rows.size() % 3 != 0) {
      parse_error(name, rows.back().second,
                  "flat coordinate list has " + std::to_string(rows.size()) + " values, not a multiple of 3");
    }
    for (std::size_t k = 0; k < rows.size(); k += 3) {
      out.push_back({{rows[k].first[0], rows[k + 1].first[0], rows[k + 2].first[0]}, rows[k].second});
    }
    return out;
  }
  for (const auto& [vals, ln] : rows) {
    if (vals.size() != 3) parse_error(name, ln, "expected 3 coordinates, found " + std::to_string(vals.size()));
    out.push_back({{vals[0], vals[1], vals[2]}, ln});
  }
  return out;
}

std::vector<SourcedPoint> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  return read_points(in, path);
}

SphericalCode load_spherical_code(const std::string& path) {
  const auto raw = read_points(path);
  if (raw.size() < 2) fail(ErrorKind::Parse, path + ": a spherical code needs at least 2 points");
  SphericalCode code;
  code.path = path;
  for (const auto& sp : raw) {
    const double r = sp.point.norm();
    if (std::abs(r - 1.0) > 1e-3) {
      fail(ErrorKind::Numeric, path + ":" + std::to_string(sp.line) + ": point is not on the unit sphere (norm " +
                                   std::to_string(r) + ")");
    }
    code.points.push_back(unit(sp.point));
  }
  code.min_chordal_distance = min_chordal_distance(code.points);
  return code;
}

std::vector<Vec3> load_constellation(const std::string& path) {
  const auto raw = read_points(path);
  if (raw.empty()) fail(ErrorKind::Parse, path + ": no points");
  std::vector<Vec3> out;
  for (const auto& sp : raw) {
    const double r = sp.point.norm();
    if (r > 1.0 + 1e-6) {
      fail(ErrorKind::Numeric, path + ":" + std::to_string(sp.line) + ": point lies outside the unit ball (rho " +
                                   std::to_string(r) + ")");
    }
    out.push_back(sp.point);
  }
  return out;
}

void write_spherical_code(std::ostream& out, std::span<const Vec3> points, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << "\n";
  char buf[128];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    out << buf;
  }
}

}  // namespace poincare
