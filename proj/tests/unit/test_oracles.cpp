#include <doctest.h>

#include <cmath>

#include "cnslab/oracles/checks.hpp"
#include "cnslab/oracles/dense.hpp"

using namespace cnslab;

TEST_CASE("dense DFT matrix is unitary up to n") {
  const Eigen::MatrixXcd F = oracle::dft_matrix(8);
  const Eigen::MatrixXcd I = F.adjoint() * F / 8.0;
  CHECK((I - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("1D derivative matrices act on trigonometric samples") {
  const int n = 8;
  const double L = 2.0;
  const Eigen::MatrixXd D = oracle::first_derivative_1d(n, L);
  const Eigen::MatrixXd D2 = oracle::second_derivative_1d(n, L);
  Eigen::VectorXd f(n), fx(n), nyq(n);
  const double k = 2.0 * std::numbers::pi * 2 / L;
  for (int i = 0; i < n; ++i) {
    const double x = L * i / n;
    f[i] = std::sin(k * x);
    fx[i] = k * std::cos(k * x);
    nyq[i] = i % 2 ? -1.0 : 1.0;
  }
  CHECK((D * f - fx).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((D * nyq).cwiseAbs().maxCoeff() < 1e-13);
  const double kn = std::numbers::pi * n / L;
  CHECK((D2 * nyq + kn * kn * nyq).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("truncation matrix is a projector") {
  const Eigen::MatrixXd T = oracle::truncation_1d(16);
  CHECK((T * T - T).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(T.trace() == doctest::Approx(11.0));
}

TEST_CASE("random states are positive and seed-deterministic") {
  const GridSpec g = GridSpec::cube(2, 8);
  const State a = oracle::random_state(g, PhysParams{}, 4);
  const State b = oracle::random_state(g, PhysParams{}, 4);
  CHECK(a.rho.min() >= 0.5);
  CHECK(a.p.min() >= 0.5);
  CHECK(oracle::max_abs_diff(a.m, b.m) == 0.0);
}

TEST_CASE("full verification suite passes") {
  for (const auto& r : oracle::run_verification_suite()) {
    INFO(r.name << " " << r.detail);
    CHECK(r.passed);
  }
}
