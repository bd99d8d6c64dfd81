#include "cnslab/lame.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "cnslab/diagnostics.hpp"
#include "cnslab/dynamics.hpp"
#include "cnslab/spectral.hpp"

namespace cnslab {

VectorField apply_lame(const VectorField& v, const PhysParams& params) {
  VectorField out = vector_laplacian(v) * (-params.mu);
  out -= grad_div(v) * (params.mu + params.lambda);
  return out;
}

LameSolution solve_lame(const VectorField& f, const PhysParams& params) {
  const double mu = params.mu;
  const double ml = params.mu + params.lambda;
  if (!(mu > 0.0) || !(2.0 * mu + params.lambda > 0.0))
    throw std::invalid_argument("solve_lame needs mu > 0 and 2 mu + lambda > 0");
  const GridSpec& g = f.grid();
  const int d = g.dim;
  if (f.components() != d) throw std::invalid_argument("solve_lame: source must have grid.dim components");

  std::vector<Spectrum> fh;
  fh.reserve(d);
  for (int a = 0; a < d; ++a) {
    if (!f[a].all_finite()) throw NonFiniteError("solve_lame: non-finite source");
    fh.push_back(forward(f[a]));
  }

  LameSolution sol;
  for (int a = 0; a < d; ++a)
    if (std::abs(mean(f[a])) > 1e-14 * std::max(1.0, sup_norm(f[a]))) sol.mean_removed = true;

  const auto& md = modes(g);
  std::vector<Spectrum> vh = fh;
  for (std::size_t i = 0; i < md.size(); ++i) {
    const Mode& m = md[i];
    if (m.k2 == 0.0) {
      for (int a = 0; a < d; ++a) vh[a].coef[i] = 0.0;
      continue;
    }
    std::complex<double> kf = 0.0;
    for (int a = 0; a < d; ++a) kf += m.kd[a] * fh[a].coef[i];
    const double base = 1.0 / (mu * m.k2);
    const double corr = ml / (mu * m.k2 * (mu * m.k2 + ml * m.kd2));
    for (int a = 0; a < d; ++a) vh[a].coef[i] = fh[a].coef[i] * base - kf * (corr * m.kd[a]);
  }

  sol.v = VectorField(g);
  VectorField fmean_free(g);
  for (int a = 0; a < d; ++a) {
    sol.v[a] = inverse(vh[a]);
    fmean_free[a] = f[a];
    fmean_free[a] += -mean(f[a]);
  }
  const double fn = lp_norm(fmean_free, 2.0);
  const double rn = lp_norm(apply_lame(sol.v, params) - fmean_free, 2.0);
  sol.residual = fn > 0.0 ? rn / fn : rn;
  return sol;
}

VelocityDecomposition decompose_velocity(const State& s) {
  const PhysParams& prm = s.params;
  ScalarField pc = s.p;
  pc += -mean(s.p);
  // apply_lame(v) = -grad P  <=>  mu lap v + (mu + lambda) grad div v = grad P.
  const LameSolution ls = solve_lame(gradient(pc) * -1.0, prm);

  VelocityDecomposition out;
  out.v = ls.v;
  out.lame_residual = ls.residual;
  out.w = velocity(s) - ls.v;

  const Tendency tend = rhs(s);
  const MaterialDerivative md = material_derivative(s, tend);
  const VectorField rho_udot = scale(md.udot, s.rho);
  const VectorField lw = apply_lame(out.w, prm) * -1.0;
  out.w_equation_residual = lp_norm(lw - rho_udot, 2.0) / std::max(lp_norm(rho_udot, 2.0), kResidualEpsilon);
  return out;
}

VectorField tensor_divergence(const TensorField& g) {
  const GridSpec& grid = g.grid();
  VectorField f(grid);
  for (int k = 0; k < g.dim; ++k)
    for (int j = 0; j < g.dim; ++j) f[k] += derivative(g(k, j), j);
  return f;
}

LameEstimateReport estimate_b6_monitor(const LameSolution& sol, const TensorField& g, double r, double q) {
  if (!(r > 1.0)) throw std::invalid_argument("estimate_b6_monitor: r must exceed 1");
  if (!(q > 3.0)) throw std::invalid_argument("estimate_b6_monitor: q must exceed 3");
  const TensorField Jv = jacobian(sol.v);
  const double gv_r = lp_norm(Jv, r);
  const double gv_inf = lp_norm(Jv, INFINITY);
  const double g_r = lp_norm(g, r);
  const double g_inf = lp_norm(g, INFINITY);

  if (g_inf == 0.0 && lp_norm(sol.v, INFINITY) != 0.0)
    throw std::invalid_argument("estimate_b6_monitor: zero source with non-zero solution");

  ScalarField grad_g2(g.grid());
  for (const auto& c : g.comp) grad_g2 += norm2(gradient(c));
  for (auto& v : grad_g2.values()) v = std::sqrt(v);
  const double grad_g_q = lp_norm(grad_g2, q);

  LameEstimateReport out;
  out.gradient_lr.name = "lame_gradient_lr";
  out.gradient_lr.lhs = gv_r;
  out.gradient_lr.rhs = g_r;
  out.gradient_lr.components = {{"g_lr", g_r}, {"r", r}};
  out.gradient_lr.ratio = g_r > 0.0 ? gv_r / g_r : 0.0;
  out.gradient_lr.constant = out.gradient_lr.ratio;

  const double log_term = std::log(std::numbers::e + grad_g_q) * g_inf;
  out.log_bound.name = "lame_log_estimate";
  out.log_bound.lhs = gv_inf;
  out.log_bound.components = {{"grad_g_lq", grad_g_q}, {"g_inf", g_inf}, {"log_term", log_term}, {"g_lr", g_r},
                        {"q", q}, {"r", r}};
  out.log_bound.rhs = 1.0 + log_term + g_r;
  out.log_bound.ratio = gv_inf / out.log_bound.rhs;
  out.log_bound.constant = out.log_bound.ratio;
  return out;
}

}  // namespace cnslab
