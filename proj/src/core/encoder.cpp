#include "poincare/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include <json.hpp>

#include "poincare/error.hpp"
#include "poincare/orientation.hpp"

namespace poincare {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace

double elevation_from_T(double T) {
  require(T >= 0.0 && T <= 1.0, "normalized mean intensity must lie in [0, 1], got " + std::to_string(T));
  return (T - 0.5) * kPi;
}

Stokes to_stokes(double rho, double psi, double chi) {
  const double c2chi = std::cos(2.0 * chi);
  return {rho * c2chi * std::cos(2.0 * psi), rho * c2chi * std::sin(2.0 * psi), rho * std::sin(2.0 * chi)};
}

SphericalCoords from_stokes(const Stokes& s) {
  SphericalCoords out;
  out.rho = std::sqrt(s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3);
  if (out.rho > 1.0 + kBallTolerance) {
    fail(ErrorKind::Numeric, "point lies outside the unit ball (rho = " + std::to_string(out.rho) + ")");
  }
  if (out.rho < 1e-12) return {};
  out.theta = std::asin(std::clamp(s.s3 / out.rho, -1.0, 1.0));
  if (std::abs(std::cos(out.theta)) < 1e-9) return out;
  double phi = std::atan2(s.s2, s.s1);
  if (phi < 0.0) phi += 2.0 * kPi;
  out.phi = phi >= 2.0 * kPi ? 0.0 : phi;
  return out;
}

EncodedPoint encode_patch(const Patch& p, const RegularityConfig& cfg) {
  EncodedPoint pt;
  pt.rho = regularity(p, cfg);
  const OrientationEstimate est = dominant_orientation(p);
  pt.psi = est.psi;
  pt.orientation_confident = est.confident;
  pt.azimuth = 2.0 * est.psi;
  pt.elevation = elevation_from_T(normalized_mean_intensity(p));
  pt.stokes = to_stokes(pt.rho, pt.psi, pt.elevation / 2.0);
  return pt;
}

Patch atom_to_intensity(std::span<const double> atom, std::size_t n) {
  require(n >= 1 && atom.size() == n * n, "atom size does not match " + std::to_string(n) + "x" + std::to_string(n));
  const auto [lo, hi] = std::minmax_element(atom.begin(), atom.end());
  std::vector<double> v(atom.size());
  if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi))) {
    std::fill(v.begin(), v.end(), *hi > 0.0 ? 255.0 : 0.0);
  } else {
    const double scale = 255.0 / (*hi - *lo);
    std::transform(atom.begin(), atom.end(), v.begin(), [&](double a) { return (a - *lo) * scale; });
  }
  return Patch(n, n, std::move(v));
}

Constellation encode_collection(std::span<const Patch> patches, const RegularityConfig& cfg,
                                std::span<const std::string> labels) {
  require(!patches.empty(), "cannot encode an empty collection");
  require(labels.empty() || labels.size() == patches.size(), "label count must match the number of patches");
  Constellation c;
  c.points.reserve(patches.size());
  for (std::size_t k = 0; k < patches.size(); ++k) {
    EncodedPoint pt = encode_patch(patches[k], cfg);
    if (!labels.empty()) pt.label = labels[k];
    c.points.push_back(std::move(pt));
  }
  return c;
}

void write_constellation_csv(std::ostream& out, const Constellation& c) {
  for (const auto& [key, value] : c.provenance) out << "# " << key << ": " << value << "\n";
  out << "id,label,S1,S2,S3,rho,psi_deg,theta_deg,confident\n";
  for (std::size_t k = 0; k < c.points.size(); ++k) {
    const auto& p = c.points[k];
    out << k << ',' << csv_field(p.label) << ',' << fixed6(p.stokes.s1) << ',' << fixed6(p.stokes.s2) << ','
        << fixed6(p.stokes.s3) << ',' << fixed6(p.rho) << ',' << fixed6(deg(p.psi)) << ',' << fixed6(deg(p.elevation))
        << ',' << (p.orientation_confident ? 1 : 0) << '\n';
  }
}

void write_constellation_json(std::ostream& out, const Constellation& c) {
  // Numbers go through the same 6-decimal rounding as the CSV.
  auto rounded = [](double v) { return std::stod(fixed6(v)); };
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < c.points.size(); ++k) {
    const auto& p = c.points[k];
    points.push_back({{"id", k},
                      {"label", p.label},
                      {"S1", rounded(p.stokes.s1)},
                      {"S2", rounded(p.stokes.s2)},
                      {"S3", rounded(p.stokes.s3)},
                      {"rho", rounded(p.rho)},
                      {"psi_deg", rounded(deg(p.psi))},
                      {"theta_deg", rounded(deg(p.elevation))},
                      {"confident", p.orientation_confident}});
  }
  nlohmann::ordered_json doc;
  doc["provenance"] = c.provenance;
  doc["points"] = std::move(points);
  out << doc.dump(2) << "\n";
}

}  // namespace poincare
