#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "poincare/error.hpp"
#include "poincare/spherical_code.hpp"

using namespace poincare;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("poincare_sc_" + name);
  std::ofstream(path) << text;
  return path.string();
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("known optimal codes are reached") {
  CHECK(generate_spherical_code(2).min_chordal_distance == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(generate_spherical_code(4).min_chordal_distance == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-6));
  CHECK(generate_spherical_code(6).min_chordal_distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("generated codes are unit-norm, seeded and monotone") {
  for (std::size_t n : {3u, 8u, 16u, 33u}) {
    CodeGenerationOptions opts;
    opts.seed = 7;
    const auto a = generate_spherical_code(n, opts);
    const auto b = generate_spherical_code(n, opts);
    REQUIRE(a.size() == n);
    CHECK(a.points == b.points);
    CHECK(a.generated);
    CHECK(a.seed == 7);
    for (const auto& p : a.points) CHECK(std::abs(p.norm() - 1.0) < 1e-12);
    CHECK(a.min_chordal_distance == min_chordal_distance(a.points));
    for (std::size_t k = 1; k < a.accepted_min_distances.size(); ++k) {
      CHECK(a.accepted_min_distances[k] >= a.accepted_min_distances[k - 1]);
    }
  }
}

TEST_CASE("spherical code generation rejects bad arguments") {
  CHECK(kind_of([] { generate_spherical_code(1); }) == ErrorKind::InvalidArgument);
  CodeGenerationOptions opts;
  opts.tol = 0.0;
  CHECK(kind_of([&] { generate_spherical_code(4, opts); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("written codes load back exactly") {
  const auto code = generate_spherical_code(12);
  std::ostringstream out;
  write_spherical_code(out, code.points, {"seed: 1", "n: 12"});
  CHECK(out.str().rfind("# seed: 1\n", 0) == 0);
  const auto loaded = load_spherical_code(write_temp("roundtrip.txt", out.str()));
  REQUIRE(loaded.size() == 12);
  for (std::size_t k = 0; k < 12; ++k) {
    CHECK(std::abs(loaded.points[k].x - code.points[k].x) < 1e-15);
    CHECK(std::abs(loaded.points[k].z - code.points[k].z) < 1e-15);
  }
  CHECK(!loaded.generated);
  CHECK(loaded.min_chordal_distance == doctest::Approx(code.min_chordal_distance));
}

TEST_CASE("flat coordinate lists are accepted") {
  const auto code = load_spherical_code(write_temp("flat.txt", "1\n0\n0\n# comment\n\n-1\n0\n0\n"));
  REQUIRE(code.size() == 2);
  CHECK(code.points[1] == Vec3{-1.0, 0.0, 0.0});
  CHECK(code.min_chordal_distance == 2.0);
}

TEST_CASE("malformed code files report their kind and line") {
  CHECK(kind_of([] { load_spherical_code("/nonexistent/code.txt"); }) == ErrorKind::Io);
  CHECK(kind_of([] { load_spherical_code(write_temp("nan.txt", "1 0 0\n0 abc 1\n")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_spherical_code(write_temp("two.txt", "1 0 0\n0 1\n")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_spherical_code(write_temp("flat4.txt", "1\n0\n0\n1\n")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_spherical_code(write_temp("one.txt", "1 0 0\n")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_spherical_code(write_temp("off.txt", "1 0 0\n0 0.9 0\n")); }) == ErrorKind::Numeric);
  try {
    load_spherical_code(write_temp("line.txt", "# header\n1 0 0\n0 1 0 5\n"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
}

TEST_CASE("constellations may fill the ball but not leave it") {
  const auto pts = load_constellation(write_temp("ball.txt", "0 0 0\n0.3 0.4 0\n1 0 0\n"));
  CHECK(pts.size() == 3);
  CHECK(kind_of([] { load_constellation(write_temp("out.txt", "0 0 1.01\n")); }) == ErrorKind::Numeric);
  CHECK(kind_of([] { load_constellation(write_temp("empty.txt", "# nothing\n")); }) == ErrorKind::Parse);
}
