#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cnslab/lagrangian.hpp"
#include "cnslab/scenario.hpp"
#include "testing.hpp"

using namespace cnslab;
using testing::kTwoPi;

namespace {

const Point kUnit{1.0, 1.0, 1.0};

double periodic_distance(double a, double b, double L) {
  double d = std::fmod(std::abs(a - b), L);
  return std::min(d, L - d);
}

}  // namespace

TEST_CASE("steady shear: a tracer returns after one period") {
  const double y0 = 0.1;
  const double speed = std::sin(kTwoPi * y0);
  const FlowSampler flow = [](const Point& x, double) {
    FlowSample s;
    s.u = {std::sin(kTwoPi * x[1]), 0.0, 0.0};
    s.p = 1.0;
    return s;
  };
  const std::vector<Point> seeds{{0.3, y0, 0.0}};
  AdvectOptions opt;
  opt.t0 = 0.0;
  opt.t1 = 1.0 / speed;
  opt.dt = opt.t1 / 500;
  const TracerSet tr = advect(flow, 2, kUnit, seeds, opt);
  const Point& end = tr.tracers[0].x.back();
  CHECK(periodic_distance(end[0], 0.3, 1.0) < 1e-4);
  CHECK(end[1] == doctest::Approx(y0));
  CHECK(tr.times.back() == doctest::Approx(opt.t1));
}

TEST_CASE("rigid translation wraps into the box") {
  const FlowSampler flow = [](const Point&, double) {
    FlowSample s;
    s.u = {0.7, -0.4, 0.25};
    return s;
  };
  const std::vector<Point> seeds{{0.9, 0.1, 0.5}};
  AdvectOptions opt;
  opt.t1 = 1.0;
  opt.dt = 0.01;
  const TracerSet tr = advect(flow, 3, kUnit, seeds, opt);
  const Point& x = tr.tracers[0].x.back();
  CHECK(x[0] == doctest::Approx(0.6));
  CHECK(x[1] == doctest::Approx(0.7));
  CHECK(x[2] == doctest::Approx(0.75));
  for (const auto& p : tr.tracers[0].x)
    for (int a = 0; a < 3; ++a) CHECK((p[a] >= 0.0 && p[a] < 1.0));
}

TEST_CASE("uniform expansion matches the pressure formula") {
  // P' = -2 c P + F along every path; closed form sampled exactly
  const double c = 0.6, F = 0.3, P0 = 2.0;
  const FlowSampler flow = [&](const Point&, double t) {
    FlowSample s;
    s.div_u = c;
    s.src = F;
    s.p = P0 * std::exp(-2.0 * c * t) + F / (2.0 * c) * (1.0 - std::exp(-2.0 * c * t));
    return s;
  };
  const std::vector<Point> seeds = lattice_seeds(2, kUnit, 2);
  AdvectOptions opt;
  opt.t1 = 1.0;
  for (double dt : {0.02, 0.01}) {
    opt.dt = dt;
    const TracerSet tr = advect(flow, 2, kUnit, seeds, opt);
    CHECK(tr.tracers[0].a.back() == doctest::Approx(c));
    const PressureFormulaReport r = pressure_formula_check(tr);
    CHECK(r.checked == 4);
    CHECK(r.rhs_nonnegative);
    CHECK(r.max_rel_error < 5.0 * dt * dt);
  }
}

TEST_CASE("vacuum tracers are excluded from the check") {
  const FlowSampler flow = [](const Point& x, double) {
    FlowSample s;
    s.p = 1.0;
    s.rho = x[0] < 0.5 ? 1e-12 : 1.0;
    return s;
  };
  const std::vector<Point> seeds{{0.25, 0.5, 0.0}, {0.75, 0.5, 0.0}};
  AdvectOptions opt;
  opt.t1 = 0.1;
  opt.dt = 0.05;
  const TracerSet tr = advect(flow, 2, kUnit, seeds, opt);
  CHECK(tr.tracers[0].vacuum);
  CHECK_FALSE(tr.tracers[1].vacuum);
  const PressureFormulaReport r = pressure_formula_check(tr);
  CHECK(r.checked == 1);
  CHECK(r.excluded_vacuum == 1);
}

TEST_CASE("seed layouts") {
  const auto lat = lattice_seeds(3, {2.0, 1.0, 1.0}, 2);
  CHECK(lat.size() == 8);
  CHECK(lat[0][0] == doctest::Approx(0.5));
  CHECK(lat[0][1] == doctest::Approx(0.25));
  const auto r1 = random_seeds(2, kUnit, 16, 42);
  const auto r2 = random_seeds(2, kUnit, 16, 42);
  const auto r3 = random_seeds(2, kUnit, 16, 43);
  CHECK(r1 == r2);
  CHECK(r1 != r3);
  for (const auto& p : r1) CHECK(p[2] == 0.0);
}

TEST_CASE("field series interpolation") {
  const GridSpec g = GridSpec::cube(2, 16);
  Scenario sc;
  sc.kind = ScenarioKind::shear;
  State a = make_scenario(sc, g, PhysParams{});
  State b = a;
  b.t = 1.0;
  b.p *= 3.0;
  const std::vector<State> states{a, b};
  const FieldSeries series(states);
  const FlowSample s0 = series.sample({0.0, 0.25, 0.0}, 0.0);
  CHECK(s0.u[0] == doctest::Approx(0.1));
  CHECK(series.sample({0.3, 0.2, 0.0}, 0.5).p == doctest::Approx(2.0));
  CHECK(series.sample({0.3, 0.2, 0.0}, 7.0).p == doctest::Approx(3.0));
  // periodic wrap
  CHECK(series.sample({1.0, 1.25, 0.0}, 0.0).u[0] == doctest::Approx(0.1));
  const std::vector<State> bad{b, a};
  CHECK_THROWS_AS(FieldSeries{bad}, std::invalid_argument);
}

TEST_CASE("tracer CSV layout") {
  const FlowSampler flow = [](const Point&, double) { return FlowSample{}; };
  const std::vector<Point> seeds{{0.5, 0.5, 0.0}};
  AdvectOptions opt;
  opt.t1 = 0.2;
  opt.dt = 0.1;
  const TracerSet tr = advect(flow, 2, kUnit, seeds, opt);
  std::ostringstream os;
  write_tracers_csv(os, tr, pressure_formula_check(tr));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "tracer,t,x,y,z,a,p_sampled,p_formula,vacuum");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
  CHECK_THROWS_AS(advect(flow, 2, kUnit, std::vector<Point>{}, opt), std::invalid_argument);
}
