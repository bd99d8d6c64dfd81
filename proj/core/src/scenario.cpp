#include "cnslab/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "cnslab/spectral.hpp"

namespace cnslab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bump_transition(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Minimum-image displacement of x from the bump center on each axis.
std::array<double, 3> displacement(const GridSpec& g, const std::array<double, 3>& x,
                                   const std::array<double, 3>& center_frac) {
  std::array<double, 3> d{0.0, 0.0, 0.0};
  for (int a = 0; a < g.dim; ++a) {
    const double L = g.length[a];
    double v = x[a] - center_frac[a] * L;
    v -= L * std::round(v / L);
    d[a] = v;
  }
  return d;
}

struct TrigTerm {
  std::array<double, 3> k;
  double amp;
  double phase;
};

// Random trigonometric polynomial with absolute coefficient sum 1.
std::vector<TrigTerm> random_polynomial(const GridSpec& g, int max_mode, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TrigTerm> terms;
  const int span = 2 * max_mode + 1;
  int count = 1;
  for (int a = 0; a < g.dim; ++a) count *= span;
  for (int flat = 0; flat < count; ++flat) {
    int rest = flat;
    std::array<double, 3> k{0.0, 0.0, 0.0};
    bool zero = true;
    for (int a = 0; a < g.dim; ++a) {
      const int m = rest % span - max_mode;
      rest /= span;
      k[a] = kTwoPi * m / g.length[a];
      if (m != 0) zero = false;
    }
    if (zero) continue;
    // Decaying spectrum keeps the data smooth.
    const double kk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) / kTwoPi;
    terms.push_back({k, unit(rng) / (1.0 + kk * kk), kTwoPi * unit(rng)});
  }
  double total = 0.0;
  for (const auto& t : terms) total += t.amp;
  for (auto& t : terms) t.amp /= total;
  return terms;
}

ScalarField evaluate(const GridSpec& g, const std::vector<TrigTerm>& terms) {
  return ScalarField::sample(g, [&](const std::array<double, 3>& x) {
    double v = 0.0;
    for (const auto& t : terms) v += t.amp * std::cos(t.k[0] * x[0] + t.k[1] * x[1] + t.k[2] * x[2] + t.phase);
    return v;
  });
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::uniform: return "uniform";
    case ScenarioKind::shear: return "shear";
    case ScenarioKind::acoustic: return "acoustic";
    case ScenarioKind::gaussian_bump_vacuum: return "gaussian_bump_vacuum";
    case ScenarioKind::nonvacuum_farfield: return "nonvacuum_farfield";
    case ScenarioKind::manufactured: return "manufactured";
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) {
  for (auto k : {ScenarioKind::uniform, ScenarioKind::shear, ScenarioKind::acoustic,
                 ScenarioKind::gaussian_bump_vacuum, ScenarioKind::nonvacuum_farfield,
                 ScenarioKind::manufactured})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

double smooth_cutoff(double r, double radius) {
  const double inner = 0.5 * radius;
  if (r <= inner) return 1.0;
  if (r >= radius) return 0.0;
  const double s = (r - inner) / (radius - inner);
  const double a = bump_transition(1.0 - s);
  const double b = bump_transition(s);
  return a / (a + b);
}

bool expects_floor_activity(const Scenario& sc) {
  return sc.kind == ScenarioKind::gaussian_bump_vacuum && sc.background == 0.0;
}

State make_scenario(const Scenario& sc, const GridSpec& grid, const PhysParams& params) {
  grid.validate();
  params.validate();
  const double Lx = grid.length[0];
  const double Ly = grid.length[1];

  ScalarField rho(grid), p(grid);
  VectorField u(grid);

  switch (sc.kind) {
    case ScenarioKind::uniform: {
      require(sc.rho0 >= 0.0 && sc.p0 >= 0.0, "uniform scenario needs rho0 >= 0 and p0 >= 0");
      rho = ScalarField(grid, sc.rho0);
      p = ScalarField(grid, sc.p0);
      for (int a = 0; a < grid.dim; ++a) u[a] = ScalarField(grid, sc.velocity[a]);
      break;
    }
    case ScenarioKind::shear: {
      require(sc.rho0 >= 0.0 && sc.p0 >= 0.0, "shear scenario needs rho0 >= 0 and p0 >= 0");
      rho = ScalarField(grid, sc.rho0);
      p = ScalarField(grid, sc.p0);
      u[0] = ScalarField::sample(grid, [&](const auto& x) { return sc.amplitude * std::sin(kTwoPi * x[1] / Ly); });
      break;
    }
    case ScenarioKind::acoustic: {
      require(sc.rho0 > 0.0 && sc.p0 > 0.0, "acoustic scenario needs rho0 > 0 and p0 > 0");
      require(std::abs(sc.amplitude) < 0.5, "acoustic amplitude must be below 0.5");
      const double c = std::sqrt(2.0 * sc.p0 / sc.rho0);
      auto s = [&](const auto& x) { return std::sin(kTwoPi * x[0] / Lx); };
      rho = ScalarField::sample(grid, [&](const auto& x) { return sc.rho0 * (1.0 + sc.amplitude * s(x)); });
      p = ScalarField::sample(grid, [&](const auto& x) { return sc.p0 * (1.0 + 2.0 * sc.amplitude * s(x)); });
      u[0] = ScalarField::sample(grid, [&](const auto& x) { return c * sc.amplitude * s(x); });
      break;
    }
    case ScenarioKind::gaussian_bump_vacuum:
    case ScenarioKind::nonvacuum_farfield: {
      require(sc.background >= 0.0, "bump background must be non-negative");
      require(sc.kind != ScenarioKind::nonvacuum_farfield || sc.background > 0.0,
              "non-vacuum far field needs a positive background");
      require(sc.bump_amplitude >= 0.0, "bump amplitude must be non-negative");
      require(sc.pressure_ratio >= 0.0, "pressure ratio must be non-negative");
      require(sc.width > 0.0 && sc.cutoff_radius > 0.0, "bump width and radius must be positive");
      for (int a = 0; a < grid.dim; ++a)
        require(sc.cutoff_radius < 0.5 * grid.length[a], "bump cutoff radius must fit in half the box");
      const double w2 = sc.width * sc.width;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto d = displacement(grid, grid.coord(i), sc.center);
        const double r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        const double shape = std::exp(-r2 / w2) * smooth_cutoff(std::sqrt(r2), sc.cutoff_radius);
        rho[i] = sc.background + sc.bump_amplitude * shape;
        p[i] = sc.pressure_ratio * rho[i];
        for (int a = 0; a < grid.dim; ++a) u[a][i] = -sc.inflow * d[a] / sc.width * shape;
      }
      break;
    }
    case ScenarioKind::manufactured: {
      require(sc.rho0 > 0.0 && sc.p0 > 0.0, "manufactured scenario needs rho0 > 0 and p0 > 0");
      require(std::abs(sc.amplitude) < 1.0, "manufactured amplitude must be below 1");
      require(sc.max_mode >= 1 && 3 * sc.max_mode < grid.n, "manufactured max_mode must be resolved");
      std::mt19937_64 rng(sc.seed);
      const auto r1 = random_polynomial(grid, sc.max_mode, rng);
      const auto r2 = random_polynomial(grid, sc.max_mode, rng);
      rho = evaluate(grid, r1) * (sc.rho0 * sc.amplitude);
      rho += sc.rho0;
      p = evaluate(grid, r2) * (sc.p0 * sc.amplitude);
      p += sc.p0;
      // Momentum is the band-limited quantity; u = m / rho is not.
      VectorField m(grid);
      for (int a = 0; a < grid.dim; ++a)
        m[a] = evaluate(grid, random_polynomial(grid, sc.max_mode, rng)) * (sc.rho0 * sc.amplitude);
      State s{0.0, std::move(rho), std::move(m), std::move(p), params};
      s.validate();
      return s;
    }
  }

  State s = State::from_primitive(0.0, std::move(rho), u, std::move(p), params);
  s.validate();
  return s;
}

CompatibilityResult compatibility_residual(const State& s) {
  const PhysParams& prm = s.params;
  const VectorField u = velocity(s);
  VectorField lhs = vector_laplacian(u) * (-prm.mu);
  lhs -= grad_div(u) * (prm.mu + prm.lambda);
  lhs += gradient(s.p);

  CompatibilityResult out{lhs, VectorField(s.grid()), 0.0, 0.0};
  const ScalarField lhs2 = norm2(lhs);
  double vac = 0.0;
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    if (s.rho[i] > prm.vacuum_threshold) {
      const double inv = 1.0 / std::sqrt(s.rho[i]);
      for (int a = 0; a < out.g.components(); ++a) out.g[a][i] = lhs[a][i] * inv;
    } else {
      vac += lhs2[i];
    }
  }
  out.g_norm = lp_norm(out.g, 2.0);
  out.vacuum_lhs_norm = std::sqrt(vac * s.grid().cell_volume());
  return out;
}

}  // namespace cnslab
