#pragma once

// Dense-matrix reference implementations. Every operator is assembled from
// explicit 1D DFT matrices and applied as a plain matrix-vector product, so
// it shares no code path with the FFT-based operators.

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "cnslab/state.hpp"

namespace cnslab::oracle {

/// F(j, k) = exp(-2 pi i j k / n).
Eigen::MatrixXcd dft_matrix(int n);

/// Real n x n matrices acting on nodal values along one axis of length L.
Eigen::MatrixXd first_derivative_1d(int n, double L);   // Nyquist mode dropped
Eigen::MatrixXd second_derivative_1d(int n, double L);  // Nyquist mode kept
Eigen::MatrixXd truncation_1d(int n);                   // keeps 3|m| < n

/// Embeds a 1D matrix acting on `axis` into the full grid (x slowest).
Eigen::MatrixXd lift(const GridSpec& g, int axis, const Eigen::MatrixXd& m1);

/// Full-grid operator matrices.
struct DenseOps {
  explicit DenseOps(const GridSpec& g);

  GridSpec grid;
  std::array<Eigen::MatrixXd, 3> d;  ///< first derivative per axis
  Eigen::MatrixXd lap;
  Eigen::MatrixXd trunc;

  ScalarField apply(const Eigen::MatrixXd& m, const ScalarField& f) const;
  ScalarField deriv(const ScalarField& f, int axis) const { return apply(d[axis], f); }
  VectorField gradient(const ScalarField& f) const;
  ScalarField divergence(const VectorField& u) const;
  VectorField curl(const VectorField& u) const;
  ScalarField laplacian(const ScalarField& f) const { return apply(lap, f); }
  ScalarField truncate(const ScalarField& f) const { return apply(trunc, f); }
  ScalarField product(const ScalarField& a, const ScalarField& b) const;  ///< truncated
};

Eigen::VectorXd to_vec(const ScalarField& f);
ScalarField from_vec(const GridSpec& g, const Eigen::VectorXd& v);
double max_abs_diff(const ScalarField& a, const ScalarField& b);
double max_abs_diff(const VectorField& a, const VectorField& b);

struct DenseTendency {
  ScalarField d_rho;
  VectorField d_m;
  ScalarField d_p;
};

/// Term-by-term evaluation of the conserved right-hand side with dense
/// operators, using the same truncation placement as the production code.
DenseTendency dense_rhs(const DenseOps& ops, const State& s);

/// u_t from the tendencies plus the truncated (u . grad) u.
VectorField dense_material_derivative(const DenseOps& ops, const State& s, const DenseTendency& t);

/// Minimum-norm solution of the assembled (d N^d)^2 Lame system
/// -mu lap v - (mu + lambda) grad div v = f - mean f.
VectorField dense_lame_solve(const DenseOps& ops, const VectorField& f, const PhysParams& params);

/// Random nodal data on grid g with values in [lo, hi].
ScalarField random_field(const GridSpec& g, double lo, double hi, std::uint64_t seed);
VectorField random_vector(const GridSpec& g, double lo, double hi, std::uint64_t seed);
/// rho, P in [0.5, 1.5] and momentum in [-0.5, 0.5] from one seed.
State random_state(const GridSpec& g, const PhysParams& params, std::uint64_t seed);

}  // namespace cnslab::oracle
