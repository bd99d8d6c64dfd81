#include <doctest.h>

#include <cmath>
#include <random>

#include "cnslab/oracles/checks.hpp"
#include "cnslab/oracles/dense.hpp"
#include "cnslab/spectral.hpp"
#include "testing.hpp"

using namespace cnslab;
using testing::kTwoPi;
using testing::max_abs;

TEST_CASE("derivatives of single modes are exact") {
  const GridSpec g = GridSpec::cube(2, 16, 2.0);
  const double k = kTwoPi * 3 / 2.0;
  const ScalarField f = testing::sample(g, [&](double x, double y, double) { return std::sin(k * x) * std::cos(k * y); });
  const ScalarField fx = testing::sample(g, [&](double x, double y, double) { return k * std::cos(k * x) * std::cos(k * y); });
  CHECK(max_abs(derivative(f, 0), fx) < 1e-12);
  CHECK(max_abs(laplacian(f), -2.0 * k * k * f) < 1e-10);
}

TEST_CASE("Nyquist mode: first derivative vanishes, Laplacian keeps it") {
  const GridSpec g = GridSpec::cube(2, 8);
  const ScalarField f = testing::sample(g, [](double x, double, double) { return std::cos(8 * std::numbers::pi * x); });
  CHECK(max_abs(derivative(f, 0)) < 1e-12);
  const double k = 8 * std::numbers::pi;
  CHECK(max_abs(laplacian(f), -k * k * f) < 1e-9);
}

TEST_CASE("forward and inverse round trip") {
  for (int dim : {2, 3}) {
    const GridSpec g = GridSpec::cube(dim, 8, 1.3);
    const ScalarField f = oracle::random_field(g, -1.0, 1.0, 11);
    CHECK(max_abs(inverse(forward(f)), f) < 1e-14);
  }
}

TEST_CASE("operators agree with dense DFT matrices") {
  for (int dim : {2, 3}) {
    const auto r = oracle::check_operators(dim, 5);
    INFO(r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("property: operators are linear") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const GridSpec g = GridSpec::cube(trial % 2 ? 3 : 2, 8);
    const VectorField u = oracle::random_vector(g, -1.0, 1.0, 100 + trial);
    const VectorField v = oracle::random_vector(g, -1.0, 1.0, 200 + trial);
    const double a = coef(rng), b = coef(rng);
    const VectorField w = a * u + b * v;
    CHECK(max_abs(divergence(w), a * divergence(u) + b * divergence(v)) < 1e-12);
    CHECK(max_abs(vector_laplacian(w), a * vector_laplacian(u) + b * vector_laplacian(v)) < 1e-10);
    CHECK(max_abs(curl(w), a * curl(u) + b * curl(v)) < 1e-12);
  }
}

TEST_CASE("property: div curl = 0 and curl grad = 0") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const GridSpec g = GridSpec::cube(3, 8);
    const VectorField u = oracle::random_vector(g, -1.0, 1.0, seed);
    CHECK(max_abs(divergence(curl(u))) < 1e-11);
    const ScalarField f = oracle::random_field(g, -1.0, 1.0, seed + 10);
    const VectorField cg = curl(gradient(f));
    for (int c = 0; c < 3; ++c) CHECK(max_abs(cg[c]) < 1e-11);
  }
}

TEST_CASE("2D curl has one component") {
  const GridSpec g = GridSpec::cube(2, 16);
  VectorField u(g);
  u[0] = testing::sample(g, [](double, double y, double) { return std::sin(kTwoPi * y); });
  const VectorField w = curl(u);
  REQUIRE(w.components() == 1);
  const ScalarField expect = testing::sample(g, [](double, double y, double) { return -kTwoPi * std::cos(kTwoPi * y); });
  CHECK(max_abs(w[0], expect) < 1e-12);
}

TEST_CASE("integrals, means and norms") {
  const GridSpec g = GridSpec::cube(2, 32, 2.0);
  const ScalarField f = testing::sample(g, [](double x, double, double) { return 1.0 + std::sin(std::numbers::pi * x); });
  CHECK(integrate(f) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(mean(f) == doctest::Approx(1.0).epsilon(1e-14));
  // trapezoid rule is exact for trigonometric polynomials below the grid limit
  CHECK(std::pow(lp_norm(f, 2.0), 2) == doctest::Approx(4.0 * 1.5).epsilon(1e-13));
  CHECK(sup_norm(f) == doctest::Approx(2.0));
}

TEST_CASE("property: Lp norms are monotone in p on a unit box") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GridSpec g = GridSpec::cube(seed % 2 ? 2 : 3, 8);
    const ScalarField f = oracle::random_field(g, -3.0, 3.0, seed);
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 4.0, 6.0}) {
      const double n = lp_norm(f, p);
      CHECK(n >= prev * (1.0 - 1e-14));
      prev = n;
    }
    CHECK(sup_norm(f) >= prev * (1.0 - 1e-14));
  }
}

TEST_CASE("2/3 truncation") {
  const GridSpec g = GridSpec::cube(2, 16);
  // modes with 3|m| < 16 survive: |m| <= 5
  const ScalarField keep = testing::sample(g, [](double x, double, double) { return std::cos(kTwoPi * 5 * x); });
  const ScalarField drop = testing::sample(g, [](double, double y, double) { return std::sin(kTwoPi * 6 * y); });
  CHECK(max_abs(truncate(keep), keep) < 1e-13);
  CHECK(max_abs(truncate(drop)) < 1e-13);
  const ScalarField f = oracle::random_field(g, -1.0, 1.0, 4);
  CHECK(max_abs(truncate(truncate(f)), truncate(f)) < 1e-14);
}

TEST_CASE("dealiased product of kept modes has no aliasing error") {
  const GridSpec g = GridSpec::cube(2, 16);
  const ScalarField a = testing::sample(g, [](double x, double, double) { return std::cos(kTwoPi * 2 * x); });
  const ScalarField b = testing::sample(g, [](double x, double, double) { return std::cos(kTwoPi * 3 * x); });
  // cos2 cos3 = (cos1 + cos5)/2, both kept
  CHECK(max_abs(dealias_product(a, b), a * b) < 1e-13);
}

TEST_CASE("Parseval quadrature") {
  for (int dim : {2, 3}) CHECK(oracle::check_parseval(dim, 9).passed);
}

TEST_CASE("non-finite input raises") {
  const GridSpec g = GridSpec::cube(2, 8);
  ScalarField f(g, 1.0);
  f[2] = INFINITY;
  CHECK_THROWS_AS(derivative(f, 0), NonFiniteError);
}

TEST_CASE("property: divergence integrates to zero") {
  for (int dim : {2, 3}) {
    const GridSpec g = GridSpec::cube(dim, dim == 2 ? 32 : 16);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const VectorField u = oracle::random_vector(g, -1.0, 1.0, 300 + seed);
      CHECK(std::abs(integrate(divergence(u))) < 1e-11);
    }
  }
}
