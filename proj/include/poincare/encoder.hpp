#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poincare/patch.hpp"
#include "poincare/regularity.hpp"

namespace poincare {

struct Stokes {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
};

// A pattern as a point in the unit ball. azimuth is 2*psi on the sphere;
// elevation is theta = 2*chi.
struct EncodedPoint {
  double rho = 0.0;
  double psi = 0.0;        // [0, pi)
  double azimuth = 0.0;    // 2*psi, [0, 2*pi)
  double elevation = 0.0;  // [-pi/2, pi/2]
  Stokes stokes;
  std::string label;
  bool orientation_confident = false;
};

struct Constellation {
  std::vector<EncodedPoint> points;
  std::map<std::string, std::string> provenance;  // source, config_digest, seed, ...
};

// theta = (T - 0.5) * pi. Throws for T outside [0, 1].
double elevation_from_T(double T);

// S1 = rho cos(2chi) cos(2psi), S2 = rho cos(2chi) sin(2psi), S3 = rho sin(2chi).
Stokes to_stokes(double rho, double psi, double chi);

struct SphericalCoords {
  double rho = 0.0;
  double theta = 0.0;  // elevation
  double phi = 0.0;    // azimuth 2*psi in [0, 2*pi)
};

inline constexpr double kBallTolerance = 1e-6;

// Inverse of to_stokes. The azimuth comes from atan2(S2, S1); it is 0 at the
// poles and all angles are 0 at the origin. Throws ErrorKind::Numeric when the
// point lies outside the unit ball by more than kBallTolerance.
SphericalCoords from_stokes(const Stokes& s);

EncodedPoint encode_patch(const Patch& p, const RegularityConfig& cfg);

// Maps a real-valued atom to intensities: min-max rescale to [0, 255]. A
// constant atom becomes all-white when positive and all-black otherwise.
Patch atom_to_intensity(std::span<const double> atom, std::size_t n);

// One point per patch, order preserved. `labels` is empty or one per patch.
Constellation encode_collection(std::span<const Patch> patches, const RegularityConfig& cfg,
                                std::span<const std::string> labels = {});

// CSV header: id,label,S1,S2,S3,rho,psi_deg,theta_deg,confident (6 decimals),
// preceded by "# key: value" provenance lines.
void write_constellation_csv(std::ostream& out, const Constellation& c);
void write_constellation_json(std::ostream& out, const Constellation& c);

}  // namespace poincare
