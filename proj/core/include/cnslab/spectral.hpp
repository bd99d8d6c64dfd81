#pragma once

#include <complex>
#include <vector>

#include "cnslab/fields.hpp"

namespace cnslab {

/// Fourier coefficients of a real field in half-complex (r2c) layout:
/// all axes full except the last, which keeps n/2+1 modes.
///
/// Coefficients are unnormalized forward DFT sums; inverse() divides by
/// the node count.
struct Spectrum {
  GridSpec grid;
  std::vector<std::complex<double>> coef;
};

/// Signed integer mode numbers and wavenumbers for one spectral slot.
struct Mode {
  std::array<int, 3> m{0, 0, 0};
  /// 2*pi*m/L on every axis, Nyquist included. Used by second derivatives.
  std::array<double, 3> k{0.0, 0.0, 0.0};
  /// Same as k but zero on a Nyquist axis. Used by first derivatives so the
  /// derivative of the real interpolant stays real.
  std::array<double, 3> kd{0.0, 0.0, 0.0};
  double k2 = 0.0;   ///< |k|^2
  double kd2 = 0.0;  ///< |kd|^2
  bool kept = true;  ///< survives the 2/3-rule truncation
};

/// Number of complex slots in the r2c layout of grid.
std::size_t spectral_size(const GridSpec& grid);

/// Mode descriptor for each spectral slot, cached per grid shape.
const std::vector<Mode>& modes(const GridSpec& grid);

Spectrum forward(const ScalarField& f);
ScalarField inverse(const Spectrum& s);

// Differential calculus. All operators reject non-finite input with
// std::domain_error and leave the zero mode of their output at zero.

ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);
/// 3D: three components. 2D: one component, d1 u2 - d2 u1.
VectorField curl(const VectorField& u);
/// Curl of a curl() result; accepts the one-component 2D vorticity and
/// returns (d2 w, -d1 w) in that case.
VectorField curl_of_vorticity(const VectorField& w);
ScalarField laplacian(const ScalarField& f);
VectorField vector_laplacian(const VectorField& u);
/// grad(div u).
VectorField grad_div(const VectorField& u);
/// Velocity gradient, entry (i,j) = d_j u_i.
TensorField jacobian(const VectorField& u);

// Quadrature and norms. Reductions run in fixed index order.

double integrate(const ScalarField& f);
double mean(const ScalarField& f);
/// (integral |f|^p)^(1/p); p = infinity gives max |f|. Throws for p < 1.
double lp_norm(const ScalarField& f, double p);
double sup_norm(const ScalarField& f);
/// Lp norm of the pointwise Euclidean magnitude of a vector field.
double lp_norm(const VectorField& u, double p);
/// Lp norm of the pointwise Frobenius magnitude of a tensor field.
double lp_norm(const TensorField& t, double p);

// Aliasing control.

/// Zeroes every mode with 3|m_a| >= n on some axis.
ScalarField truncate(const ScalarField& f);
/// Pointwise product followed by 2/3-rule truncation. Throws on grid mismatch.
ScalarField dealias_product(const ScalarField& a, const ScalarField& b);

}  // namespace cnslab
