#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "poincare/dictionary.hpp"
#include "poincare/error.hpp"
#include "poincare/image_io.hpp"
#include "poincare/omp.hpp"

using namespace poincare;

namespace {

Dictionary identity_dictionary(std::size_t n) {
  Dictionary d;
  d.atom_size = n;
  for (std::size_t a = 0; a < n * n; ++a) {
    Atom atom;
    atom.values.assign(n * n, 0.0);
    atom.values[a] = 1.0;
    d.atoms.push_back(std::move(atom));
  }
  return d;
}

Dictionary random_dictionary(std::size_t n, std::size_t count, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Dictionary d;
  d.atom_size = n;
  for (std::size_t a = 0; a < count; ++a) {
    Atom atom;
    double e = 0.0;
    for (std::size_t t = 0; t < n * n; ++t) {
      atom.values.push_back(g(gen));
      e += atom.values.back() * atom.values.back();
    }
    for (double& v : atom.values) v /= std::sqrt(e);
    d.atoms.push_back(std::move(atom));
  }
  return d;
}

std::vector<std::vector<double>> atom_values(const Dictionary& d) {
  std::vector<std::vector<double>> out;
  for (const auto& a : d.atoms) out.push_back(a.values);
  return out;
}

}  // namespace

TEST_CASE("omp on an orthonormal basis picks the largest entries") {
  const Dictionary d = identity_dictionary(2);
  const std::vector<double> x{3.0, -1.0, 0.0, 2.0};
  const SparseCode c = omp(d, x, 2);
  REQUIRE(c.support.size() == 2);
  CHECK(c.support[0] == 0);
  CHECK(c.support[1] == 3);
  CHECK(c.coefficients[0] == doctest::Approx(3.0));
  CHECK(c.coefficients[1] == doctest::Approx(2.0));
  CHECK(c.residual_energy == doctest::Approx(1.0));
}

TEST_CASE("omp breaks ties toward the lowest index") {
  const Dictionary d = identity_dictionary(2);
  const std::vector<double> x{0.0, 1.0, -1.0, 1.0};
  const SparseCode c = omp(d, x, 1);
  REQUIRE(c.support.size() == 1);
  CHECK(c.support[0] == 1);
}

TEST_CASE("omp stops early on an exact fit and on a zero signal") {
  const Dictionary d = identity_dictionary(2);
  const std::vector<double> x{0.0, 5.0, 0.0, 0.0};
  const SparseCode c = omp(d, x, 3);
  CHECK(c.support.size() == 1);
  CHECK(c.residual_energy < 1e-12);
  const std::vector<double> zero(4, 0.0);
  CHECK(omp(d, zero, 2).support.empty());
}

TEST_CASE("omp agrees with an exhaustive search and an independent least-squares solve") {
  std::mt19937_64 gen(71);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    const Dictionary d = random_dictionary(2, 6, gen);
    const auto atoms = atom_values(d);
    std::vector<double> x(4);
    for (double& v : x) v = g(gen);

    // One atom: greedy selection is optimal.
    const SparseCode one = omp(d, x, 1);
    double best1 = INFINITY;
    for (std::size_t a = 0; a < 6; ++a) best1 = std::min(best1, oracle::subset_residual(atoms, {a}, x));
    CHECK(one.residual_energy == doctest::Approx(best1).epsilon(1e-9));

    // Two atoms: never better than the best pair, and equal to the exact fit on
    // the chosen support.
    const SparseCode two = omp(d, x, 2);
    REQUIRE(two.support.size() == 2);
    double best2 = INFINITY;
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = a + 1; b < 6; ++b) best2 = std::min(best2, oracle::subset_residual(atoms, {a, b}, x));
    }
    CHECK(two.residual_energy >= best2 - 1e-9);
    std::vector<double> coef;
    const double own = oracle::subset_residual(atoms, two.support, x, &coef);
    CHECK(two.residual_energy == doctest::Approx(own).epsilon(1e-9));
    CHECK(two.coefficients[0] == doctest::Approx(coef[0]).epsilon(1e-9));
    CHECK(two.coefficients[1] == doctest::Approx(coef[1]).epsilon(1e-9));
  }
}

TEST_CASE("residual energy never grows with more atoms") {
  std::mt19937_64 gen(73);
  std::normal_distribution<double> g;
  const Dictionary d = random_dictionary(4, 40, gen);
  const OmpSolver solver(d);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x(16);
    for (double& v : x) v = g(gen);
    const SparseCode c = solver.solve(x, 12);
    double prev = 0.0;
    for (double v : x) prev += v * v;
    for (double r : c.residual_history) {
      CHECK(r <= prev + 1e-12);
      prev = r;
    }
  }
}

TEST_CASE("zero-energy atoms are never selected") {
  Dictionary d = identity_dictionary(2);
  d.atoms[0].values.assign(4, 0.0);
  d.atoms[0].zero_energy = true;
  const OmpSolver solver(d);
  CHECK(solver.usable_atoms() == 3);
  const std::vector<double> x{4.0, 1.0, 0.0, 0.0};
  const SparseCode c = solver.solve(x, 3);
  for (std::size_t a : c.support) CHECK(a != 0);
}

TEST_CASE("omp argument errors") {
  const Dictionary d = identity_dictionary(2);
  const std::vector<double> x{1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(omp(d, x, 0), Error);
  CHECK_THROWS_AS(omp(d, x, 5), Error);
  CHECK_THROWS_AS(omp(d, std::vector<double>{1.0, 2.0}, 1), Error);
  Dictionary empty;
  empty.atom_size = 2;
  CHECK_THROWS_AS(OmpSolver{empty}, Error);
  Dictionary zeros = d;
  for (auto& a : zeros.atoms) {
    a.values.assign(4, 0.0);
    a.zero_energy = true;
  }
  CHECK_THROWS_AS(OmpSolver{zeros}, Error);
}

TEST_CASE("images spanned by the dictionary are reconstructed exactly") {
  Image flat(20, 23, 100.0);
  const Dictionary constant = generate_dictionary(std::vector<Vec3>{{0, 0, 1}, {1, 0, 0}}, 8, 1);
  for (std::size_t stride : {1u, 3u, 8u}) {
    const auto r = reconstruct(flat, constant, 1, stride, 1);
    CHECK(std::isinf(r.report.psnr_db));
    for (double v : r.image.values()) CHECK(v == doctest::Approx(100.0));
  }

  std::mt19937_64 gen(79);
  Image noise(16, 16);
  for (double& v : noise.values()) v = static_cast<double>(gen() % 256);
  const auto r = reconstruct(noise, identity_dictionary(4), 16, 2, 1);
  CHECK(r.report.psnr_db > 200.0);
  CHECK(r.report.patches == 49);
}

TEST_CASE("reconstruction does not depend on the thread count") {
  const Image boat = load_image(std::string(POINCARE_DATA_DIR) + "/images/boat.pgm").crop(100, 200, 48, 40);
  const Dictionary d = generate_dictionary(generate_spherical_code(24).points, 8, 3);
  const auto one = reconstruct(boat, d, 3, 2, 1);
  const auto four = reconstruct(boat, d, 3, 2, 4);
  CHECK(std::ranges::equal(one.image.values(), four.image.values()));
  CHECK(one.report.psnr_db == four.report.psnr_db);
  CHECK(one.report.sparsity == 3);
  CHECK(one.report.stride == 2);
}

TEST_CASE("a union dictionary is never much worse than its parts") {
  const Image boat = load_image(std::string(POINCARE_DATA_DIR) + "/images/boat.pgm").crop(200, 200, 64, 64);
  const auto code = generate_spherical_code(32).points;
  const Dictionary a = generate_dictionary(code, 8, 1);
  const Dictionary b = generate_dictionary(code, 8, 2);
  const Dictionary u = dictionary_union(a, b);
  const double pa = reconstruct(boat, a, 4, 1).report.psnr_db;
  const double pb = reconstruct(boat, b, 4, 1).report.psnr_db;
  const double pu = reconstruct(boat, u, 4, 1).report.psnr_db;
  CHECK(pu >= pa - 0.05);
  CHECK(pu >= pb - 0.05);
}

TEST_CASE("reconstruction argument errors") {
  const Image img(10, 10, 5.0);
  const Dictionary d = identity_dictionary(4);
  CHECK_THROWS_AS(reconstruct(img, d, 1, 0), Error);
  CHECK_THROWS_AS(reconstruct(img, d, 17, 1), Error);
  CHECK_THROWS_AS(reconstruct(Image(3, 10, 0.0), d, 1, 1), Error);
}
