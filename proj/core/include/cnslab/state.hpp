#pragma once

#include <cstddef>
#include <string>

#include "cnslab/fields.hpp"

namespace cnslab {

/// Viscosities and the floors used near vacuum.
struct PhysParams {
  double mu = 0.01;
  double lambda = 0.0;
  double rho_floor = 1e-10;         ///< divisor floor when recovering u = m / rho
  double vacuum_threshold = 1e-8;   ///< rho at or below this counts as vacuum

  /// Throws std::invalid_argument unless mu > 0, 2 mu + 3 lambda >= 0 and
  /// the floors are non-negative.
  void validate() const;

  /// Hypothesis of the 3D continuation principle (mu > 4 lambda). Violating
  /// it is allowed; callers emit a warning.
  bool satisfies_mu_gt_4lambda() const { return mu > 4.0 * lambda; }
};

/// Conserved state (rho, m = rho u, P) at one time.
struct State {
  double t = 0.0;
  ScalarField rho;
  VectorField m;
  ScalarField p;
  PhysParams params;

  const GridSpec& grid() const { return rho.grid(); }

  /// Builds a state from primitive variables, m = rho u.
  static State from_primitive(double t, ScalarField rho, const VectorField& u, ScalarField p,
                              const PhysParams& params);

  /// Throws std::invalid_argument when grids disagree, values are not
  /// finite, or rho / P fall below -1e-12.
  void validate() const;

  bool all_finite() const;
};

inline constexpr double kNegativeTolerance = 1e-12;

/// u = m / max(rho, rho_floor). Nodes with rho <= rho_floor and |m| <= rho_floor
/// get u = 0.
VectorField velocity(const State& s);

/// Nodes with rho <= rho_floor carrying |m| > rho_floor (momentum in vacuum).
std::size_t vacuum_momentum_violations(const State& s);

/// theta = P / rho where rho > vacuum_threshold, 0 on the vacuum set.
ScalarField temperature(const State& s);

/// Fraction of nodes with rho <= vacuum_threshold.
double vacuum_fraction(const State& s);

}  // namespace cnslab
