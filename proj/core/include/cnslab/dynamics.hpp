#pragma once

#include "cnslab/state.hpp"

namespace cnslab {

/// Time derivatives of the conserved variables.
struct Tendency {
  ScalarField d_rho;
  VectorField d_m;
  ScalarField d_p;
};

/// mu lap u + (mu + lambda) grad div u.
VectorField viscous_force(const VectorField& u, const PhysParams& params);

/// Viscous heating 2 mu |D(u)|^2 + lambda (div u)^2, evaluated pointwise
/// without truncation. D(u) is the symmetric part of the velocity gradient.
ScalarField viscous_heating(const VectorField& u, const PhysParams& params);

/// Right-hand side of the heat-conduction-free system in conserved form:
///
///   rho_t = -div m
///   m_t   = -div(m (x) u) + mu lap u + (mu + lambda) grad div u - grad P
///   P_t   = -div(P u) - P div u + 2 mu |D(u)|^2 + lambda (div u)^2
///
/// Every pointwise product is 2/3-rule truncated before it is differentiated
/// or summed. Throws NonFiniteError if the state or the result is not finite.
Tendency rhs(const State& s);

/// Advective and viscous time-step limits; dt = cfl * min(advective, viscous).
struct StepLimits {
  double advective = 0.0;  ///< h / (max|u| + max sqrt(2 theta))
  double viscous = 0.0;    ///< h^2 rho_eff / (2 d (2 mu + lambda))
  double dt = 0.0;
};

StepLimits step_limits(const State& s, double cfl);
double compute_dt(const State& s, double cfl);

/// Outcome of one SSP-RK3 step, including the negative-value clipping ledger.
struct StepResult {
  State state;
  double min_rho_preclip = 0.0;
  double min_p_preclip = 0.0;
  double min_theta_preclip = 0.0;  ///< min of P / rho over non-vacuum nodes, or 0
  double clipped_rho_mass = 0.0;  ///< integral of the density removed from below zero
  double clipped_p_mass = 0.0;
};

/// Three-stage strong-stability-preserving Runge-Kutta step (Shu-Osher form).
/// Values of rho or P below -1e-12 after the step are reset to zero and the
/// added amount is reported. Throws NonFiniteError on NaN/Inf.
StepResult step(const State& s, double dt);

/// ||rho||_inf + sup of theta over the non-vacuum set.
double blowup_monitor(const State& s);

}  // namespace cnslab
