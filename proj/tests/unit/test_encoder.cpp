#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "poincare/dictionary.hpp"
#include "poincare/encoder.hpp"
#include "poincare/error.hpp"
#include "poincare/fixtures.hpp"

using namespace poincare;

namespace {

constexpr double kPi = std::numbers::pi;

RegularityConfig entropy_cfg() {
  RegularityConfig cfg;
  cfg.estimator = Estimator::Entropy;
  return cfg;
}

}  // namespace

TEST_CASE("elevation from mean intensity") {
  CHECK(elevation_from_T(0.0) == -kPi / 2);
  CHECK(elevation_from_T(0.5) == 0.0);
  CHECK(elevation_from_T(1.0) == kPi / 2);
  CHECK_THROWS_AS(elevation_from_T(1.01), Error);
  CHECK_THROWS_AS(elevation_from_T(-0.01), Error);
}

TEST_CASE("to_stokes examples") {
  auto s = to_stokes(1.0, 0.0, 0.0);
  CHECK(s.s1 == 1.0);
  CHECK(s.s2 == 0.0);
  CHECK(s.s3 == 0.0);
  s = to_stokes(1.0, kPi / 4, 0.0);
  CHECK(s.s1 == doctest::Approx(0.0));
  CHECK(s.s2 == doctest::Approx(1.0));
  s = to_stokes(0.5, 0.0, kPi / 4);
  CHECK(s.s1 == doctest::Approx(0.0));
  CHECK(s.s3 == doctest::Approx(0.5));
}

TEST_CASE("from_stokes examples") {
  auto c = from_stokes({1.0, 0.0, 0.0});
  CHECK(c.rho == 1.0);
  CHECK(c.theta == 0.0);
  CHECK(c.phi == 0.0);

  c = from_stokes({-0.5, 0.0, 0.0});
  CHECK(c.rho == 0.5);
  CHECK(c.theta == 0.0);
  CHECK(c.phi == doctest::Approx(kPi));

  c = from_stokes({-0.3, -0.4, 0.0});
  CHECK(c.phi == doctest::Approx(kPi + std::atan2(0.4, 0.3)));

  c = from_stokes({0.0, 0.0, 0.7});
  CHECK(c.theta == doctest::Approx(kPi / 2));
  CHECK(c.phi == 0.0);

  c = from_stokes({0.0, 0.0, 0.0});
  CHECK(c.rho == 0.0);
  CHECK(c.theta == 0.0);
  CHECK(c.phi == 0.0);

  CHECK_NOTHROW(from_stokes({1.0 + 5e-7, 0.0, 0.0}));
  try {
    from_stokes({1.1, 0.0, 0.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Numeric);
  }
}

TEST_CASE("from_stokes inverts to_stokes") {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const double rho = 0.01 + 0.99 * u(gen);
    const double theta = (2.0 * u(gen) - 1.0) * (kPi / 2 - 0.01);
    const double psi = kPi * u(gen);
    const Stokes s = to_stokes(rho, psi, theta / 2);
    const SphericalCoords c = from_stokes(s);
    const Stokes back = to_stokes(c.rho, c.phi / 2, c.theta / 2);
    CHECK(std::abs(back.s1 - s.s1) < 1e-9);
    CHECK(std::abs(back.s2 - s.s2) < 1e-9);
    CHECK(std::abs(back.s3 - s.s3) < 1e-9);
    CHECK(c.rho == doctest::Approx(rho).epsilon(1e-12));
    CHECK(std::abs(c.theta - theta) < 1e-9);
  }
}

TEST_CASE("encoded points satisfy the norm identity") {
  std::mt19937_64 gen(67);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 8 + gen() % 10;
    Patch p(n, n);
    const auto levels = 1 + gen() % 256;
    for (double& x : p.values()) x = static_cast<double>(gen() % levels);
    for (auto cfg : {entropy_cfg(), RegularityConfig{}}) {
      const auto e = encode_patch(p, cfg);
      const double n2 = e.stokes.s1 * e.stokes.s1 + e.stokes.s2 * e.stokes.s2 + e.stokes.s3 * e.stokes.s3;
      CHECK(n2 == doctest::Approx(e.rho * e.rho).epsilon(1e-12));
      CHECK(e.azimuth == 2.0 * e.psi);
    }
  }
}

TEST_CASE("stripe and noise patches land at the surface and the center") {
  Patch stripes(16, 16);
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) stripes(i, j) = (i % 4 < 2) ? 255.0 : 1.0;
  }
  const auto s = encode_patch(stripes, entropy_cfg());
  CHECK(s.rho == 1.0);
  CHECK(std::abs(s.elevation) < 0.01);
  CHECK(s.psi == 0.0);

  Rng rng(3);
  Patch noise(16, 16);
  for (double& x : noise.values()) x = std::floor(256.0 * rng.uniform());
  CHECK(encode_patch(noise, entropy_cfg()).rho < 0.2);
}

TEST_CASE("clean rotated patches lie on a circle of the unit sphere") {
  const auto fixture = rotation_fixture(21, 1);
  double s3 = 0.0;
  for (std::size_t k = 0; k < 18; ++k) {
    const auto e = encode_patch(fixture[k].patch, entropy_cfg());
    CHECK(e.rho == 1.0);
    if (k > 0) CHECK(std::abs(e.stokes.s3 - s3) < 0.1);
    s3 = e.stokes.s3;
  }
}

TEST_CASE("rotating a line patch shifts the azimuth by twice the angle") {
  constexpr double kTol = 10.0 * kPi / 180.0;
  const auto base = encode_patch(line_patch(11, 0.0), entropy_cfg());
  for (int s = 1; s < 18; ++s) {
    const double delta = s * 10.0 * kPi / 180.0;
    const auto e = encode_patch(line_patch(11, delta), entropy_cfg());
    const double shift = std::remainder(e.azimuth - base.azimuth - 2.0 * delta, 2.0 * kPi);
    CHECK(std::abs(shift) < 2.0 * kTol);
  }
}

TEST_CASE("brighter versions of a pattern sit higher on the sphere") {
  double previous = -2.0;
  for (double offset : {0.0, 30.0, 60.0, 90.0, 120.0}) {
    Patch p = line_patch(11, 0.3);
    for (double& x : p.values()) x = offset + 0.5 * x;
    const auto e = encode_patch(p, entropy_cfg());
    const double sin_theta = e.stokes.s3 / e.rho;
    CHECK(sin_theta > previous);
    previous = sin_theta;
  }
}

TEST_CASE("atoms are rescaled to the 8-bit range") {
  const std::vector<double> atom{-1.0, 0.0, 1.0, 3.0};
  const Patch p = atom_to_intensity(atom, 2);
  CHECK(p(0, 0) == 0.0);
  CHECK(p(0, 1) == doctest::Approx(63.75));
  CHECK(p(1, 1) == 255.0);
  const std::vector<double> flat(4, 0.5);
  CHECK(atom_to_intensity(flat, 2)(1, 0) == 255.0);
  const std::vector<double> zeros(4, 0.0);
  CHECK(atom_to_intensity(zeros, 2)(1, 0) == 0.0);
}

TEST_CASE("horizontal and vertical stripe atoms encode at azimuth 0 and pi") {
  Rng rng(5);
  Dictionary d;
  d.atom_size = 8;
  for (int k = 0; k < 6; ++k) {
    d.atoms.push_back(generate_atom(1.0, 0.0, (k % 2) * kPi, 8, rng));
  }
  for (std::size_t k = 0; k < d.size(); ++k) {
    const auto e = encode_patch(atom_to_intensity(d.atoms[k].values, 8), entropy_cfg());
    const double target = (k % 2) * kPi;
    CHECK(std::abs(std::remainder(e.azimuth - target, 2.0 * kPi)) < 1e-9);
  }
}

TEST_CASE("collections keep order and labels") {
  const std::vector<Patch> patches{line_patch(9, 0.0), line_patch(9, 1.0)};
  const std::vector<std::string> labels{"a", "b"};
  const auto c = encode_collection(patches, entropy_cfg(), labels);
  REQUIRE(c.points.size() == 2);
  CHECK(c.points[0].label == "a");
  CHECK(c.points[1].psi == encode_patch(patches[1], entropy_cfg()).psi);
  CHECK(encode_collection(std::span(patches).first(1), entropy_cfg()).points.size() == 1);
  CHECK_THROWS_AS(encode_collection(std::span<const Patch>{}, entropy_cfg()), Error);
}

TEST_CASE("constellation CSV and JSON exports") {
  const std::vector<Patch> patches{line_patch(9, 0.0)};
  const std::vector<std::string> labels{"needs,quote"};
  auto c = encode_collection(patches, entropy_cfg(), labels);
  c.provenance["config_digest"] = "0123";
  c.provenance["seed"] = "9";

  std::ostringstream csv;
  write_constellation_csv(csv, c);
  const std::string text = csv.str();
  CHECK(text.find("# config_digest: 0123\n") == 0);
  CHECK(text.find("id,label,S1,S2,S3,rho,psi_deg,theta_deg,confident\n") != std::string::npos);
  CHECK(text.find("0,\"needs,quote\",") != std::string::npos);

  std::ostringstream js;
  write_constellation_json(js, c);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["provenance"]["seed"] == "9");
  REQUIRE(j["points"].size() == 1);
  CHECK(j["points"][0]["label"] == "needs,quote");
  CHECK(j["points"][0]["rho"].get<double>() == doctest::Approx(c.points[0].rho));
}
