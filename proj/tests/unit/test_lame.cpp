#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cnslab/lame.hpp"
#include "cnslab/oracles/checks.hpp"
#include "cnslab/oracles/dense.hpp"
#include "cnslab/scenario.hpp"
#include "cnslab/spectral.hpp"
#include "testing.hpp"

using namespace cnslab;
using testing::kTwoPi;
using testing::max_abs;

namespace {

PhysParams params(double mu, double lambda) {
  PhysParams p;
  p.mu = mu;
  p.lambda = lambda;
  return p;
}

VectorField mean_free(VectorField f) {
  for (int c = 0; c < f.components(); ++c) f[c] += -mean(f[c]);
  return f;
}

}  // namespace

TEST_CASE("zero source gives zero solution") {
  const GridSpec g = GridSpec::cube(3, 8);
  const LameSolution s = solve_lame(VectorField(g), params(1.0, 0.0));
  CHECK(max_abs(s.v, VectorField(g)) == 0.0);
  CHECK_FALSE(s.mean_removed);
}

TEST_CASE("gradient source has a closed-form potential solution") {
  // f = grad sin(2 pi x)  =>  v = grad phi with (2 mu + lambda) |k|^4 phi^ = |k|^2 f-potential
  const GridSpec g = GridSpec::cube(2, 16);
  const PhysParams p = params(0.5, 0.25);
  const double k = kTwoPi;
  const ScalarField phi_src = testing::sample(g, [&](double x, double, double) { return std::sin(k * x); });
  const VectorField f = gradient(phi_src);
  const LameSolution s = solve_lame(f, p);
  const ScalarField phi = phi_src * (1.0 / ((2.0 * p.mu + p.lambda) * k * k));
  CHECK(max_abs(s.v, gradient(phi)) < 1e-13);
  CHECK(max_abs(apply_lame(s.v, p), f) < 1e-12);
  CHECK(s.residual < 1e-12);
}

TEST_CASE("closed form matches the dense solve") {
  for (int dim : {2, 3}) {
    const auto r = oracle::check_lame(dim, 6);
    INFO(r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("property: residual is tiny for random sources and viscosities") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const GridSpec g = GridSpec::cube(seed % 2 ? 2 : 3, 16);
    const PhysParams p = params(0.1 * seed, -0.05 * seed * 0.5);
    const VectorField f = mean_free(oracle::random_vector(g, -1.0, 1.0, seed));
    CHECK(solve_lame(f, p).residual <= 1e-10);
  }
}

TEST_CASE("property: solve is linear") {
  const GridSpec g = GridSpec::cube(3, 8);
  const PhysParams p = params(0.7, 0.3);
  const VectorField f = mean_free(oracle::random_vector(g, -1.0, 1.0, 1));
  const VectorField h = mean_free(oracle::random_vector(g, -1.0, 1.0, 2));
  const VectorField lhs = solve_lame(2.5 * f + (-1.5) * h, p).v;
  const VectorField rhs = 2.5 * solve_lame(f, p).v + (-1.5) * solve_lame(h, p).v;
  CHECK(max_abs(lhs, rhs) < 1e-13);
}

TEST_CASE("constant part of the source is dropped and reported") {
  const GridSpec g = GridSpec::cube(2, 8);
  VectorField f = mean_free(oracle::random_vector(g, -1.0, 1.0, 3));
  const VectorField v0 = solve_lame(f, params(1.0, 0.0)).v;
  f[0] += 0.4;
  const LameSolution s = solve_lame(f, params(1.0, 0.0));
  CHECK(s.mean_removed);
  CHECK(max_abs(s.v, v0) < 1e-14);
}

TEST_CASE("invalid viscosities and non-finite input") {
  const GridSpec g = GridSpec::cube(2, 8);
  VectorField f(g);
  CHECK_THROWS_AS(solve_lame(f, params(0.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(solve_lame(f, params(1.0, -2.5)), std::invalid_argument);
  f[1][3] = std::nan("");
  CHECK_THROWS_AS(solve_lame(f, params(1.0, 0.0)), NonFiniteError);
}

TEST_CASE("tensor divergence of an isotropic tensor is a gradient") {
  const GridSpec g = GridSpec::cube(3, 8);
  const ScalarField q = oracle::random_field(g, -1.0, 1.0, 5);
  TensorField t(g);
  for (int i = 0; i < 3; ++i) t(i, i) = q;
  CHECK(max_abs(tensor_divergence(t), gradient(q)) < 1e-13);
}

TEST_CASE("velocity decomposition on smooth non-vacuum states") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Scenario sc;
    sc.kind = ScenarioKind::manufactured;
    sc.amplitude = 0.35;
    sc.seed = seed;
    const State s = make_scenario(sc, GridSpec::cube(2, 64), params(0.05, 0.01));
    const VelocityDecomposition d = decompose_velocity(s);
    CHECK(d.w_equation_residual <= 1e-6);
    CHECK(d.lame_residual <= 1e-10);
    CHECK(max_abs(d.v + d.w, velocity(s)) < 1e-14);
  }
}

TEST_CASE("estimate monitors") {
  const GridSpec g = GridSpec::cube(2, 16);
  const PhysParams p = params(1.0, 0.5);
  const ScalarField q = testing::sample(g, [](double x, double y, double) { return std::cos(kTwoPi * x) * std::sin(kTwoPi * y); });
  TensorField t(g);
  t(0, 0) = q;
  t(1, 1) = q;
  const LameSolution sol = solve_lame(tensor_divergence(t), p);
  const LameEstimateReport r = estimate_b6_monitor(sol, t, 2.0);
  CHECK(r.gradient_lr.ratio > 0.0);
  CHECK(std::isfinite(r.log_bound.ratio));
  CHECK(r.log_bound.rhs >= 1.0);
  CHECK_THROWS_AS(estimate_b6_monitor(sol, t, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_b6_monitor(sol, TensorField(g), 2.0), std::invalid_argument);
  const LameSolution zero = solve_lame(VectorField(g), p);
  CHECK(estimate_b6_monitor(zero, TensorField(g), 2.0).gradient_lr.ratio == 0.0);
}

TEST_CASE("property: gradient ratio is invariant under scaling of the source") {
  const GridSpec g = GridSpec::cube(2, 16);
  const PhysParams p = params(0.7, 0.2);
  const ScalarField q = testing::sample(g, [](double x, double y, double) { return std::sin(kTwoPi * x) + 0.5 * std::cos(2.0 * kTwoPi * y); });
  double ref = 0.0;
  for (double s : {1.0, 1e-3, 250.0}) {
    TensorField t(g);
    t(0, 0) = q * s;
    t(1, 1) = q * s;
    const double ratio = estimate_b6_monitor(solve_lame(tensor_divergence(t), p), t, 2.0).gradient_lr.ratio;
    if (s == 1.0) ref = ratio;
    CHECK(ratio == doctest::Approx(ref).epsilon(1e-10));
  }
}
