#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "poincare/patch.hpp"
#include "poincare/random.hpp"
#include "poincare/regularity.hpp"
#include "poincare/spherical_code.hpp"

namespace poincare {

struct AtomProvenance {
  double rho = 1.0;
  double theta = 0.0;
  double phi = 0.0;
  std::uint64_t seed = 0;
};

struct Atom {
  std::vector<double> values;  // row-major N x N
  bool zero_energy = false;    // L = 0 atoms stay all-zero and unnormalized
  AtomProvenance provenance;
};

struct Dictionary {
  std::size_t atom_size = 0;  // N
  std::vector<Atom> atoms;
  std::string source;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> metadata;

  std::size_t size() const noexcept { return atoms.size(); }
  std::size_t dimension() const noexcept { return atom_size * atom_size; }
};

enum class RandomizeMode {
  AdditiveNoise,  // Gaussian noise of growing strength
  PixelSwap,      // batches of N random pixel-pair swaps
};

struct AtomOptions {
  RandomizeMode randomize = RandomizeMode::AdditiveNoise;
  RegularityConfig target{.estimator = Estimator::Entropy};
  double rho_tolerance = 0.05;
  std::size_t max_attempts = 200;
};

// N x N zero patch with L distinct, uniformly chosen rows set to 1.
Patch bar_pattern(std::size_t n, std::size_t lines, Rng& rng);

// Rotates a horizontal-bar pattern by psi with bilinear interpolation. Bars
// extend indefinitely along their own direction and the row pattern repeats
// with period N, so samples that leave the patch stay on the bar pattern.
Patch rotate_bars(const Patch& bars, double psi);

// Random-bar atom: T = theta/pi + 0.5, L = round(T*N) bars, rotated by phi/2,
// randomized toward rho when rho < 1, then scaled to unit energy.
Atom generate_atom(double rho, double theta, double phi, std::size_t n, Rng& rng, const AtomOptions& opts = {});

// One atom per point; atom i draws from derive_seed(seed, i).
Dictionary generate_dictionary(std::span<const Vec3> constellation, std::size_t n, std::uint64_t seed,
                               const AtomOptions& opts = {});

// Atoms of `a` followed by those of `b`.
Dictionary dictionary_union(const Dictionary& a, const Dictionary& b);

void write_dictionary_json(std::ostream& out, const Dictionary& d);
// N*N rows, one atom per column.
void write_dictionary_matrix(std::ostream& out, const Dictionary& d);

// Accepts either format; JSON is recognized by a leading '{'.
Dictionary load_dictionary(const std::string& path);

// All atoms tiled into one image, each min-max scaled to [0, 255], separated
// by a one-pixel gray border.
Image atom_sheet(const Dictionary& d);

}  // namespace poincare
