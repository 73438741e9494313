#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "poincare/error.hpp"
#include "poincare/image_io.hpp"

using namespace poincare;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "poincare_unit";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("pgm round trip keeps 8-bit values") {
  std::vector<double> v(6 * 5);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>((k * 37) % 256);
  const Image img(6, 5, v);
  const auto path = scratch("rt.pgm").string();
  write_pgm(path, img, {"config_digest: abc", "seed: 1"});
  const Image back = load_image(path);
  CHECK(back.rows() == 6);
  CHECK(back.cols() == 5);
  CHECK(back == img);
}

TEST_CASE("pgm writer rounds and clamps") {
  const auto path = scratch("clamp.pgm").string();
  write_pgm(path, Image(1, 3, std::vector<double>{-4.0, 10.4, 300.0}));
  const Image back = read_pgm(path);
  CHECK(back(0, 0) == 0.0);
  CHECK(back(0, 1) == 10.0);
  CHECK(back(0, 2) == 255.0);
}

TEST_CASE("image loading errors carry a kind") {
  try {
    load_image(scratch("missing.pgm").string());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  const auto path = scratch("junk.pgm").string();
  std::ofstream(path) << "P5\n4 4\n255\nxx";
  try {
    load_image(path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}

TEST_CASE("bundled boat image loads") {
  const Image boat = load_image(std::string(POINCARE_DATA_DIR) + "/images/boat.pgm");
  CHECK(boat.rows() == 512);
  CHECK(boat.cols() == 512);
}
