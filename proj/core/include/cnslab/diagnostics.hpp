#pragma once

#include <cstdint>
#include <string>

#include "cnslab/dynamics.hpp"
#include "cnslab/state.hpp"

namespace cnslab {

inline constexpr double kResidualEpsilon = 1e-14;

// --- Energies ---------------------------------------------------------------

/// integral of (1/2) rho |u|^2.
double kinetic_energy(const State& s);
/// integral of P (equal to rho theta with unit heat capacity and gas constant).
double internal_energy(const State& s);
/// integral of (1/2) rho |u|^2 + P.
double total_energy(const State& s);

/// integral of rho |u|^q for q in {2, 4, 6}; other q throw std::invalid_argument.
double weighted_kinetic(const State& s, int q);
/// integral of |grad u|^2 (1 + |u|^2 + |u|^4).
double dissipation_functional(const State& s);

// --- Flux, vorticity, acceleration -------------------------------------------

/// G = (2 mu + lambda) div u - P + mean(P). The mean correction is the
/// periodic-box form of the effective viscous flux; G has zero mean.
ScalarField effective_viscous_flux(const State& s);
/// curl u (one component in 2D).
VectorField vorticity(const State& s);

struct MaterialDerivative {
  VectorField udot;
  std::size_t masked_nodes = 0;  ///< vacuum nodes where udot was set to zero
};

/// udot = u_t + (u . grad) u with u_t recovered from the conserved
/// tendencies, u_t = (d_m - u d_rho) / max(rho, floor). The advective part
/// is truncated. Vacuum nodes are masked to zero.
MaterialDerivative material_derivative(const State& s, const Tendency& tend);

/// || rho udot - grad G + mu curl curl u ||_2 / max(|| rho udot ||_2, eps).
double momentum_identity_residual(const State& s);
double momentum_identity_residual(const State& s, const Tendency& tend);

struct EnergyLawResidual {
  double relres = 0.0;
  bool reliable = true;  ///< false when more than 10% of nodes are vacuum
};

/// Residual of (rho E)_t + div(rho E u) = div F with E = theta + |u|^2/2 and
/// F = (mu/2) grad |u|^2 + mu (u . grad) u + lambda u div u - P u, normalised
/// by ||div F||_2 + eps. (rho E)_t comes from the conserved tendencies.
EnergyLawResidual energy_law_residual(const State& s);
EnergyLawResidual energy_law_residual(const State& s, const Tendency& tend);

// --- Records ----------------------------------------------------------------

struct DiagnosticOptions {
  double q_tilde = 4.0;  ///< exponent for the density/pressure gradient norms
  bool with_residuals = true;
};

/// One time stamp of monitored functionals. Fields after "run ledger" are
/// filled by the time loop; records recomputed offline leave them at zero.
struct DiagnosticRecord {
  double t = 0.0;
  double mass = 0.0;
  double total_energy = 0.0;
  double kinetic_energy = 0.0;
  double internal_energy = 0.0;
  double weighted_kinetic_2 = 0.0;
  double weighted_kinetic_4 = 0.0;
  double weighted_kinetic_6 = 0.0;
  double dissipation = 0.0;
  double sup_rho = 0.0;
  double sup_theta = 0.0;
  double M = 0.0;
  double min_rho = 0.0;
  double min_theta = 0.0;
  double min_p = 0.0;
  double vacuum_fraction = 0.0;
  double grad_u_l2 = 0.0;
  double q_tilde = 4.0;
  double grad_rho_lq = 0.0;
  double grad_p_lq = 0.0;
  double grad_udot_l2 = 0.0;
  double compat_g_norm = 0.0;
  double momentum_identity_relres = 0.0;
  double energy_law_relres = 0.0;
  bool energy_law_reliable = true;

  // run ledger
  std::uint64_t step = 0;
  double dt = 0.0;
  double min_rho_preclip = 0.0;
  double min_p_preclip = 0.0;
  double clip_budget = 0.0;
};

/// Evaluates every state-derived entry of a record.
DiagnosticRecord evaluate_diagnostics(const State& s, const DiagnosticOptions& opt = {});

/// One compact JSON object (no trailing newline) with "type":"diagnostic".
std::string to_ndjson(const DiagnosticRecord& r);
/// Inverse of to_ndjson for the numeric fields; throws on malformed input.
DiagnosticRecord record_from_ndjson(const std::string& line);
/// Fixed column order shared by csv_header and to_csv_row.
std::string csv_header();
std::string to_csv_row(const DiagnosticRecord& r);

}  // namespace cnslab
