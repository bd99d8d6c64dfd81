#include "cnslab/oracles/dense.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cnslab::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Signed mode number of DFT index j.
int signed_mode(int j, int n) { return j <= n / 2 ? j : j - n; }

// Real part of F^{-1} diag(mult) F.
Eigen::MatrixXd spectral_1d(int n, const Eigen::VectorXcd& mult) {
  const Eigen::MatrixXcd F = dft_matrix(n);
  const Eigen::MatrixXcd Finv = F.adjoint() / static_cast<double>(n);
  const Eigen::MatrixXcd M = Finv * mult.asDiagonal() * F;
  return M.real();
}

}  // namespace

Eigen::MatrixXcd dft_matrix(int n) {
  Eigen::MatrixXcd F(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const long jk = static_cast<long>(j) * k % n;
      F(j, k) = std::polar(1.0, -kTwoPi * static_cast<double>(jk) / n);
    }
  return F;
}

Eigen::MatrixXd first_derivative_1d(int n, double L) {
  Eigen::VectorXcd mult(n);
  for (int j = 0; j < n; ++j) {
    const int m = signed_mode(j, n);
    mult(j) = (2 * m == n) ? 0.0 : std::complex<double>(0.0, kTwoPi * m / L);
  }
  return spectral_1d(n, mult);
}

Eigen::MatrixXd second_derivative_1d(int n, double L) {
  Eigen::VectorXcd mult(n);
  for (int j = 0; j < n; ++j) {
    const double k = kTwoPi * signed_mode(j, n) / L;
    mult(j) = -k * k;
  }
  return spectral_1d(n, mult);
}

Eigen::MatrixXd truncation_1d(int n) {
  Eigen::VectorXcd mult(n);
  for (int j = 0; j < n; ++j) mult(j) = 3 * std::abs(signed_mode(j, n)) < n ? 1.0 : 0.0;
  return spectral_1d(n, mult);
}

Eigen::MatrixXd lift(const GridSpec& g, int axis, const Eigen::MatrixXd& m1) {
  const int n = g.n;
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int a = 0; a < g.dim; ++a) {
    const Eigen::MatrixXd factor = (a == axis) ? m1 : Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd next(out.rows() * n, out.cols() * n);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(i * n, j * n, n, n) = out(i, j) * factor;
    out = std::move(next);
  }
  return out;
}

DenseOps::DenseOps(const GridSpec& g) : grid(g) {
  g.validate();
  const auto N = static_cast<Eigen::Index>(g.size());
  lap = Eigen::MatrixXd::Zero(N, N);
  trunc = Eigen::MatrixXd::Identity(N, N);
  for (int a = 0; a < g.dim; ++a) {
    d[a] = lift(g, a, first_derivative_1d(g.n, g.length[a]));
    lap += lift(g, a, second_derivative_1d(g.n, g.length[a]));
    trunc = lift(g, a, truncation_1d(g.n)) * trunc;
  }
}

ScalarField DenseOps::apply(const Eigen::MatrixXd& m, const ScalarField& f) const {
  return from_vec(grid, m * to_vec(f));
}

VectorField DenseOps::gradient(const ScalarField& f) const {
  VectorField out(grid);
  for (int a = 0; a < grid.dim; ++a) out[a] = deriv(f, a);
  return out;
}

ScalarField DenseOps::divergence(const VectorField& u) const {
  ScalarField out(grid);
  for (int a = 0; a < grid.dim; ++a) out += deriv(u[a], a);
  return out;
}

VectorField DenseOps::curl(const VectorField& u) const {
  if (grid.dim == 2) return VectorField(std::vector<ScalarField>{deriv(u[1], 0) - deriv(u[0], 1)});
  VectorField w(grid);
  w[0] = deriv(u[2], 1) - deriv(u[1], 2);
  w[1] = deriv(u[0], 2) - deriv(u[2], 0);
  w[2] = deriv(u[1], 0) - deriv(u[0], 1);
  return w;
}

ScalarField DenseOps::product(const ScalarField& a, const ScalarField& b) const {
  ScalarField p(grid);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a[i] * b[i];
  return truncate(p);
}

Eigen::VectorXd to_vec(const ScalarField& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) v(static_cast<Eigen::Index>(i)) = f[i];
  return v;
}

ScalarField from_vec(const GridSpec& g, const Eigen::VectorXd& v) {
  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = v(static_cast<Eigen::Index>(i));
  return f;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const VectorField& a, const VectorField& b) {
  if (a.components() != b.components()) throw std::invalid_argument("max_abs_diff: component mismatch");
  double m = 0.0;
  for (int c = 0; c < a.components(); ++c) m = std::max(m, max_abs_diff(a[c], b[c]));
  return m;
}

namespace {

VectorField primitive_velocity(const State& s) {
  VectorField u(s.grid());
  for (int a = 0; a < s.grid().dim; ++a)
    for (std::size_t i = 0; i < u[a].size(); ++i) u[a][i] = s.m[a][i] / std::max(s.rho[i], s.params.rho_floor);
  return u;
}

}  // namespace

DenseTendency dense_rhs(const DenseOps& ops, const State& s) {
  const GridSpec& g = ops.grid;
  const int d = g.dim;
  const double mu = s.params.mu;
  const double lam = s.params.lambda;
  const VectorField u = primitive_velocity(s);
  const ScalarField divu = ops.divergence(u);

  DenseTendency t;
  t.d_rho = ops.divergence(s.m) * -1.0;

  t.d_m = VectorField(g);
  for (int i = 0; i < d; ++i) {
    ScalarField flux_div(g);
    for (int j = 0; j < d; ++j) flux_div += ops.deriv(ops.product(s.m[i], u[j]), j);
    t.d_m[i] = ops.laplacian(u[i]) * mu + ops.deriv(divu, i) * (mu + lam) - flux_div - ops.deriv(s.p, i);
  }

  ScalarField heat(g);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const ScalarField e = (ops.deriv(u[i], j) + ops.deriv(u[j], i)) * 0.5;
      heat += e * e * (2.0 * mu);
    }
  heat += divu * divu * lam;
  ScalarField pflux(g);
  for (int j = 0; j < d; ++j) pflux += ops.deriv(ops.product(s.p, u[j]), j);
  t.d_p = ops.truncate(heat) - pflux - ops.product(s.p, divu);
  return t;
}

VectorField dense_material_derivative(const DenseOps& ops, const State& s, const DenseTendency& t) {
  const GridSpec& g = ops.grid;
  const VectorField u = primitive_velocity(s);
  VectorField out(g);
  for (int i = 0; i < g.dim; ++i) {
    ScalarField adv(g);
    for (int j = 0; j < g.dim; ++j) adv += u[j] * ops.deriv(u[i], j);
    adv = ops.truncate(adv);
    for (std::size_t n = 0; n < adv.size(); ++n) {
      double v = (t.d_m[i][n] - u[i][n] * t.d_rho[n]) / std::max(s.rho[n], s.params.rho_floor) + adv[n];
      if (s.rho[n] <= s.params.vacuum_threshold) v = 0.0;
      out[i][n] = v;
    }
  }
  return out;
}

VectorField dense_lame_solve(const DenseOps& ops, const VectorField& f, const PhysParams& params) {
  const GridSpec& g = ops.grid;
  const int d = g.dim;
  const auto N = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d * N, d * N);
  Eigen::VectorXd b(d * N);
  for (int a = 0; a < d; ++a) {
    A.block(a * N, a * N, N, N) -= params.mu * ops.lap;
    for (int c = 0; c < d; ++c) A.block(a * N, c * N, N, N) -= (params.mu + params.lambda) * (ops.d[a] * ops.d[c]);
    Eigen::VectorXd fa = to_vec(f[a]);
    fa.array() -= fa.mean();
    b.segment(a * N, N) = fa;
  }
  const Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(b);
  VectorField v(g);
  for (int a = 0; a < d; ++a) v[a] = from_vec(g, x.segment(a * N, N));
  return v;
}

ScalarField random_field(const GridSpec& g, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  ScalarField f(g);
  for (auto& v : f.values()) v = dist(rng);
  return f;
}

VectorField random_vector(const GridSpec& g, double lo, double hi, std::uint64_t seed) {
  VectorField u(g);
  for (int a = 0; a < g.dim; ++a) u[a] = random_field(g, lo, hi, seed * 7919u + 17u * static_cast<unsigned>(a) + 1u);
  return u;
}

State random_state(const GridSpec& g, const PhysParams& params, std::uint64_t seed) {
  State s;
  s.params = params;
  s.rho = random_field(g, 0.5, 1.5, seed * 3u + 1u);
  s.p = random_field(g, 0.5, 1.5, seed * 3u + 2u);
  s.m = random_vector(g, -0.5, 0.5, seed * 3u + 3u);
  return s;
}

}  // namespace cnslab::oracle
