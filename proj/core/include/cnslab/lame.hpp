#pragma once

#include "cnslab/estimates.hpp"
#include "cnslab/state.hpp"

namespace cnslab {

/// Periodic Lame solve of  -mu lap v - (mu + lambda) grad div v = f.
struct LameSolution {
  VectorField v;
  double residual = 0.0;      ///< relative L2 residual against the mean-free source
  bool mean_removed = false;  ///< true when f had a non-zero mean that was dropped
};

/// -mu lap v - (mu + lambda) grad div v, evaluated spectrally.
VectorField apply_lame(const VectorField& v, const PhysParams& params);

/// Closed-form per-mode inversion of  mu |k|^2 I + (mu + lambda) k k^T,
///   v^ = f^ / (mu |k|^2) - (mu + lambda) (k.f^) k / (mu |k|^2 (mu |k|^2 + (mu + lambda) |k|^2)),
/// with v^(0) = 0. The grad-div part uses first-derivative wavenumbers (zero on
/// Nyquist planes) so the inverse matches apply_lame exactly.
/// Throws std::invalid_argument if mu <= 0 or 2 mu + lambda <= 0.
LameSolution solve_lame(const VectorField& f, const PhysParams& params);

/// u = v + w with  mu lap v + (mu + lambda) grad div v = grad (P - mean P)
/// and the remainder w satisfying  mu lap w + (mu + lambda) grad div w = rho udot.
struct VelocityDecomposition {
  VectorField v;
  VectorField w;
  double w_equation_residual = 0.0;  ///< relative to || rho udot ||_2
  double lame_residual = 0.0;
};

VelocityDecomposition decompose_velocity(const State& s);

/// Divergence of a tensor: f_k = sum_j d_j g_kj.
VectorField tensor_divergence(const TensorField& g);

struct LameEstimateReport {
  InequalityReport gradient_lr;  ///< ||grad v||_r / ||g||_r
  InequalityReport log_bound;    ///< ||grad v||_inf against 1 + ln(e + ||grad g||_q) ||g||_inf + ||g||_r
};

/// Monitors for a Lame solution whose source is f = div g. Throws
/// std::invalid_argument when g vanishes but v does not.
LameEstimateReport estimate_b6_monitor(const LameSolution& sol, const TensorField& g, double r, double q = 4.0);

}  // namespace cnslab
