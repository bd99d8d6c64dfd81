#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cnslab/state.hpp"

namespace cnslab {

enum class ScenarioKind {
  uniform,
  shear,
  acoustic,
  gaussian_bump_vacuum,
  nonvacuum_farfield,
  manufactured,
};

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario_kind(std::string_view name);

/// Initial-data recipe. Which fields matter depends on kind:
///
///  - uniform:   rho = rho0, u = velocity, P = p0
///  - shear:     rho = rho0, u = (amplitude sin(2 pi y / L_y), 0), P = p0
///  - acoustic:  rho = rho0 (1 + a s), u = (c a s, 0), P = p0 (1 + 2 a s),
///               s = sin(2 pi x / L_x), c = sqrt(2 p0 / rho0)
///  - gaussian_bump_vacuum / nonvacuum_farfield:
///               rho = background + bump_amplitude exp(-r^2/width^2) chi(r),
///               P = pressure_ratio * rho,
///               u = -inflow (x - c) / width exp(-r^2/width^2) chi(r)
///               where chi is a C-infinity cutoff equal to 1 for
///               r <= cutoff_radius / 2 and 0 for r >= cutoff_radius
///  - manufactured: rho0 (1 + a R1), p0 (1 + a R2), m_i = rho0 a R_{3+i}; each R
///               is a random trigonometric polynomial with modes |m| <= max_mode
///               and absolute coefficient sum 1, drawn from seed.
struct Scenario {
  ScenarioKind kind = ScenarioKind::uniform;

  double rho0 = 1.0;
  double p0 = 1.0;
  double amplitude = 0.1;
  std::array<double, 3> velocity{0.0, 0.0, 0.0};

  double background = 1e-6;
  double bump_amplitude = 1.0;
  double width = 0.1;
  double cutoff_radius = 0.4;
  double inflow = 1.0;
  double pressure_ratio = 1.0;
  /// Bump center as a fraction of the box on each axis.
  std::array<double, 3> center{0.5, 0.5, 0.5};

  int max_mode = 3;
  std::uint64_t seed = 1;
};

/// Smooth cutoff used by the bump scenarios: 1 on [0, radius/2], 0 beyond radius.
double smooth_cutoff(double r, double radius);

/// Builds the t = 0 state. Throws std::invalid_argument for parameters that
/// would give negative density or pressure, and for invalid grids or params.
State make_scenario(const Scenario& sc, const GridSpec& grid, const PhysParams& params);

/// True when the state is an exact-vacuum run (background of zero) for which
/// the run log should carry an "expect floor activity" note.
bool expects_floor_activity(const Scenario& sc);

/// Compatibility data for (rho0, u0, P0):
///   -mu lap u0 - (mu + lambda) grad div u0 + grad P0 = sqrt(rho0) g.
struct CompatibilityResult {
  VectorField lhs;
  VectorField g;           ///< lhs / sqrt(rho) off the vacuum set, 0 on it
  double g_norm = 0.0;     ///< L2 norm of g
  double vacuum_lhs_norm = 0.0;  ///< L2 norm of lhs restricted to the vacuum set
};

CompatibilityResult compatibility_residual(const State& s);

}  // namespace cnslab
