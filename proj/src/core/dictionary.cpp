#include "poincare/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "poincare/encoder.hpp"
#include "poincare/error.hpp"

namespace poincare {

namespace {

double measure(const std::vector<double>& values, std::size_t n, const RegularityConfig& cfg) {
  return regularity(atom_to_intensity(values, n), cfg);
}

// Drives the atom toward the requested regularity and keeps the closest state.
void randomize(std::vector<double>& values, std::size_t n, double rho, Rng& rng, const AtomOptions& opts) {
  std::vector<double> best = values;
  double best_gap = std::abs(measure(values, n, opts.target) - rho);
  std::vector<double> state = values;
  for (std::size_t attempt = 1; attempt <= opts.max_attempts && best_gap > opts.rho_tolerance; ++attempt) {
    if (opts.randomize == RandomizeMode::AdditiveNoise) {
      const double sigma = static_cast<double>(attempt) / static_cast<double>(opts.max_attempts);
      for (std::size_t k = 0; k < state.size(); ++k) state[k] = values[k] + sigma * rng.normal();
    } else {
      for (std::size_t s = 0; s < n; ++s) std::swap(state[rng.below(state.size())], state[rng.below(state.size())]);
    }
    const double gap = std::abs(measure(state, n, opts.target) - rho);
    if (gap < best_gap) {
      best_gap = gap;
      best = state;
    }
  }
  values = std::move(best);
}

nlohmann::ordered_json to_json(const Dictionary& d) {
  nlohmann::ordered_json j;
  j["n_atoms"] = d.size();
  j["atom_size"] = d.atom_size;
  j["seed"] = d.seed;
  j["source"] = d.source;
  j["metadata"] = d.metadata;
  auto zero = nlohmann::ordered_json::array();
  auto prov = nlohmann::ordered_json::array();
  auto atoms = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < d.size(); ++k) {
    const Atom& a = d.atoms[k];
    if (a.zero_energy) zero.push_back(k);
    prov.push_back({a.provenance.rho, a.provenance.theta, a.provenance.phi, a.provenance.seed});
    atoms.push_back(a.values);
  }
  j["zero_energy"] = std::move(zero);
  j["provenance"] = std::move(prov);
  j["atoms"] = std::move(atoms);
  return j;
}

Dictionary from_json(const nlohmann::json& j, const std::string& path) {
  Dictionary d;
  try {
    d.atom_size = j.at("atom_size").get<std::size_t>();
    d.seed = j.value("seed", std::uint64_t{0});
    d.source = j.value("source", std::string{});
    if (j.contains("metadata")) d.metadata = j["metadata"].get<std::map<std::string, std::string>>();
    const auto& atoms = j.at("atoms");
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      Atom a;
      a.values = atoms[k].get<std::vector<double>>();
      if (a.values.size() != d.dimension()) {
        fail(ErrorKind::Parse, path + ": atom " + std::to_string(k) + " has " + std::to_string(a.values.size()) +
                                   " values, expected " + std::to_string(d.dimension()));
      }
      if (j.contains("provenance") && k < j["provenance"].size()) {
        const auto& p = j["provenance"][k];
        a.provenance = {p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>(),
                        p.at(3).get<std::uint64_t>()};
      }
      d.atoms.push_back(std::move(a));
    }
    if (j.contains("zero_energy")) {
      for (const auto& idx : j["zero_energy"]) d.atoms.at(idx.get<std::size_t>()).zero_energy = true;
    }
    if (j.contains("n_atoms") && j["n_atoms"].get<std::size_t>() != d.size()) {
      fail(ErrorKind::Parse, path + ": n_atoms does not match the atom list");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  } catch (const std::out_of_range& e) {
    fail(ErrorKind::Parse, path + ": zero_energy index out of range");
  }
  if (d.atoms.empty() || d.atom_size == 0) fail(ErrorKind::Parse, path + ": dictionary has no atoms");
  return d;
}

Dictionary from_matrix(std::istream& in, const std::string& path) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<double> vals;
    double v;
    while (ss >> v) vals.push_back(v);
    if (!ss.eof()) fail(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": not a number");
    if (vals.empty()) continue;
    if (!rows.empty() && vals.size() != rows.front().size()) {
      fail(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": ragged matrix row");
    }
    rows.push_back(std::move(vals));
  }
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
  if (rows.empty() || n * n != rows.size()) {
    fail(ErrorKind::Parse, path + ": matrix row count " + std::to_string(rows.size()) + " is not a square atom size");
  }
  Dictionary d;
  d.atom_size = n;
  d.source = path;
  d.atoms.resize(rows.front().size());
  for (std::size_t c = 0; c < d.atoms.size(); ++c) {
    auto& a = d.atoms[c];
    a.values.resize(rows.size());
    double energy = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      a.values[r] = rows[r][c];
      energy += a.values[r] * a.values[r];
    }
    a.zero_energy = energy == 0.0;
  }
  return d;
}

}  // namespace

Patch bar_pattern(std::size_t n, std::size_t lines, Rng& rng) {
  require(lines <= n, "cannot place more bars than rows");
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  // Partial Fisher-Yates: the first `lines` entries become a uniform subset.
  for (std::size_t i = 0; i < lines; ++i) std::swap(rows[i], rows[i + rng.below(n - i)]);
  Patch p(n, n, 0.0);
  for (std::size_t k = 0; k < lines; ++k) {
    for (std::size_t j = 0; j < n; ++j) p(rows[k], j) = 1.0;
  }
  return p;
}

Patch rotate_bars(const Patch& bars, double psi) {
  const std::size_t n = bars.rows();
  std::vector<double> profile(n);
  for (std::size_t i = 0; i < n; ++i) profile[i] = bars(i, 0);

  const double center = (static_cast<double>(n) - 1.0) / 2.0;
  const double c = std::cos(psi), s = std::sin(psi);
  const auto period = static_cast<long>(n);
  auto row = [&](long i) { return profile[static_cast<std::size_t>(((i % period) + period) % period)]; };

  Patch out(n, n, 0.0, bars.levels());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = static_cast<double>(j) - center;
      const double y = static_cast<double>(i) - center;
      // Only the source row matters: the pattern is constant along each row.
      const double sy = -s * x + c * y + center;
      const double fy = std::floor(sy);
      const double a = sy - fy;
      const auto i0 = static_cast<long>(fy);
      out(i, j) = (1.0 - a) * row(i0) + a * row(i0 + 1);
    }
  }
  return out;
}

Atom generate_atom(double rho, double theta, double phi, std::size_t n, Rng& rng, const AtomOptions& opts) {
  require(rho >= 0.0 && rho <= 1.0 + kBallTolerance, "atom regularity must lie in [0, 1]");
  require(theta >= -std::numbers::pi / 2 - 1e-12 && theta <= std::numbers::pi / 2 + 1e-12,
          "atom elevation must lie in [-pi/2, pi/2]");
  require(n >= 2, "atom size must be at least 2");

  const double T = std::clamp(theta / std::numbers::pi + 0.5, 0.0, 1.0);
  const auto lines = static_cast<std::size_t>(std::lround(T * static_cast<double>(n)));

  Atom atom;
  atom.provenance = {rho, theta, phi, 0};
  Patch bars = rotate_bars(bar_pattern(n, lines, rng), phi / 2.0);
  atom.values.assign(bars.values().begin(), bars.values().end());
  if (rho < 1.0 && lines > 0) randomize(atom.values, n, rho, rng, opts);

  double energy = 0.0;
  for (double v : atom.values) energy += v * v;
  if (energy < 1e-24) {
    atom.zero_energy = true;
    return atom;
  }
  const double inv = 1.0 / std::sqrt(energy);
  for (double& v : atom.values) v *= inv;
  return atom;
}

Dictionary generate_dictionary(std::span<const Vec3> constellation, std::size_t n, std::uint64_t seed,
                               const AtomOptions& opts) {
  require(!constellation.empty(), "cannot generate a dictionary from an empty constellation");
  Dictionary d;
  d.atom_size = n;
  d.seed = seed;
  d.atoms.reserve(constellation.size());
  for (std::size_t i = 0; i < constellation.size(); ++i) {
    const Vec3& p = constellation[i];
    const SphericalCoords sc = from_stokes({p.x, p.y, p.z});
    const std::uint64_t atom_seed = derive_seed(seed, i);
    Rng rng(atom_seed);
    Atom a = generate_atom(std::min(sc.rho, 1.0), sc.theta, sc.phi, n, rng, opts);
    a.provenance.seed = atom_seed;
    d.atoms.push_back(std::move(a));
  }
  return d;
}

Dictionary dictionary_union(const Dictionary& a, const Dictionary& b) {
  require(a.atom_size == b.atom_size, "cannot unite dictionaries with atom sizes " + std::to_string(a.atom_size) +
                                          " and " + std::to_string(b.atom_size));
  Dictionary out = a;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  out.source = a.source + " + " + b.source;
  return out;
}

void write_dictionary_json(std::ostream& out, const Dictionary& d) { out << to_json(d).dump() << "\n"; }

void write_dictionary_matrix(std::ostream& out, const Dictionary& d) {
  char buf[32];
  for (std::size_t r = 0; r < d.dimension(); ++r) {
    for (std::size_t c = 0; c < d.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", d.atoms[c].values[r]);
      if (c) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Dictionary load_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  in >> std::ws;
  if (in.peek() == '{') {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::Parse, path + ": " + e.what());
    }
    return from_json(j, path);
  }
  return from_matrix(in, path);
}

Image atom_sheet(const Dictionary& d) {
  require(d.size() > 0, "dictionary is empty");
  const std::size_t n = d.atom_size;
  const auto grid = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d.size()))));
  const std::size_t grid_rows = (d.size() + grid - 1) / grid;
  Image sheet(grid_rows * (n + 1) + 1, grid * (n + 1) + 1, 128.0);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const Patch tile = atom_to_intensity(d.atoms[k].values, n);
    const std::size_t top = (k / grid) * (n + 1) + 1, left = (k % grid) * (n + 1) + 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) sheet(top + i, left + j) = tile(i, j);
    }
  }
  return sheet;
}

}  // namespace poincare
