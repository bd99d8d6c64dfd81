#include "cnslab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cnslab/spectral.hpp"

namespace cnslab {

VectorField viscous_force(const VectorField& u, const PhysParams& params) {
  VectorField f = vector_laplacian(u) * params.mu;
  f += grad_div(u) * (params.mu + params.lambda);
  return f;
}

ScalarField viscous_heating(const VectorField& u, const PhysParams& params) {
  const TensorField J = jacobian(u);
  const int d = J.dim;
  ScalarField dd(u.grid());
  ScalarField div(u.grid());
  for (int i = 0; i < d; ++i) {
    div += J(i, i);
    for (int j = 0; j < d; ++j) {
      for (std::size_t n = 0; n < dd.size(); ++n) {
        const double e = 0.5 * (J(i, j)[n] + J(j, i)[n]);
        dd[n] += e * e;
      }
    }
  }
  ScalarField out(u.grid());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = 2.0 * params.mu * dd[n] + params.lambda * div[n] * div[n];
  return out;
}

Tendency rhs(const State& s) {
  if (!s.all_finite()) throw NonFiniteError("rhs: state is not finite");
  const GridSpec& g = s.grid();
  const int d = g.dim;
  const PhysParams& prm = s.params;
  const VectorField u = velocity(s);

  Tendency t;
  t.d_rho = -divergence(s.m);

  // Momentum: flux rows m_i u_j, truncated, then divergence of each row.
  const VectorField visc = viscous_force(u, prm);
  const VectorField gp = gradient(s.p);
  t.d_m = VectorField(g);
  for (int i = 0; i < d; ++i) {
    VectorField row(g);
    for (int j = 0; j < d; ++j) row[j] = dealias_product(s.m[i], u[j]);
    t.d_m[i] = visc[i] - divergence(row) - gp[i];
  }

  // Pressure.
  VectorField pu(g);
  for (int j = 0; j < d; ++j) pu[j] = dealias_product(s.p, u[j]);
  const ScalarField divu = divergence(u);
  t.d_p = truncate(viscous_heating(u, prm));
  t.d_p -= divergence(pu);
  t.d_p -= dealias_product(s.p, divu);

  if (!t.d_rho.all_finite() || !t.d_m.all_finite() || !t.d_p.all_finite())
    throw NonFiniteError("rhs: tendency is not finite");
  return t;
}

StepLimits step_limits(const State& s, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  const GridSpec& g = s.grid();
  const PhysParams& prm = s.params;
  const double h = g.min_spacing();

  const VectorField u = velocity(s);
  const ScalarField theta = temperature(s);
  double umax = 0.0;
  const ScalarField uu = norm2(u);
  for (double v : uu.values()) umax = std::max(umax, std::sqrt(v));
  double cmax = 0.0;
  for (double th : theta.values()) cmax = std::max(cmax, std::sqrt(std::max(2.0 * th, 0.0)));

  const double rho_eff = std::max(s.rho.min(), prm.rho_floor);
  const double diffusivity = 2.0 * g.dim * (2.0 * prm.mu + prm.lambda) / rho_eff;

  StepLimits lim;
  const double speed = umax + cmax;
  lim.advective = speed > 0.0 ? h / speed : std::numeric_limits<double>::infinity();
  lim.viscous = diffusivity > 0.0 ? h * h / diffusivity : std::numeric_limits<double>::infinity();
  lim.dt = cfl * std::min(lim.advective, lim.viscous);
  return lim;
}

double compute_dt(const State& s, double cfl) { return step_limits(s, cfl).dt; }

namespace {

// a * x + b * (y + dt * k), componentwise over the conserved variables.
State combine(double a, const State& x, double b, const State& y, double dt, const Tendency& k) {
  State out = y;
  const std::size_t n = x.rho.size();
  auto mix = [&](ScalarField& dst, const ScalarField& xs, const ScalarField& ys, const ScalarField& ks) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a * xs[i] + b * (ys[i] + dt * ks[i]);
  };
  mix(out.rho, x.rho, y.rho, k.d_rho);
  mix(out.p, x.p, y.p, k.d_p);
  for (int c = 0; c < out.m.components(); ++c) mix(out.m[c], x.m[c], y.m[c], k.d_m[c]);
  return out;
}

double clip_negative(ScalarField& f) {
  double added = 0.0;
  for (auto& v : f.values()) {
    if (v < -kNegativeTolerance) {
      added -= v;
      v = 0.0;
    }
  }
  return added * f.grid().cell_volume();
}

}  // namespace

StepResult step(const State& s, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step: dt must be positive");
  const Tendency k0 = rhs(s);
  const State s1 = combine(0.0, s, 1.0, s, dt, k0);
  const Tendency k1 = rhs(s1);
  const State s2 = combine(0.75, s, 0.25, s1, dt, k1);
  const Tendency k2 = rhs(s2);
  State next = combine(1.0 / 3.0, s, 2.0 / 3.0, s2, dt, k2);
  next.t = s.t + dt;
  if (!next.all_finite()) throw NonFiniteError("step produced non-finite values");

  StepResult r;
  r.min_rho_preclip = next.rho.min();
  r.min_p_preclip = next.p.min();
  r.min_theta_preclip = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < next.rho.size(); ++i)
    if (next.rho[i] > next.params.vacuum_threshold)
      r.min_theta_preclip = std::min(r.min_theta_preclip, next.p[i] / next.rho[i]);
  if (std::isinf(r.min_theta_preclip)) r.min_theta_preclip = 0.0;
  r.clipped_rho_mass = clip_negative(next.rho);
  r.clipped_p_mass = clip_negative(next.p);
  r.state = std::move(next);
  return r;
}

double blowup_monitor(const State& s) {
  const ScalarField theta = temperature(s);
  double sup_theta = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    if (s.rho[i] > s.params.vacuum_threshold) sup_theta = std::max(sup_theta, theta[i]);
  return sup_norm(s.rho) + sup_theta;
}

}  // namespace cnslab
