#include "cnslab/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnslab {

void PhysParams::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be positive");
  if (!std::isfinite(lambda) || 2.0 * mu + 3.0 * lambda < 0.0)
    throw std::invalid_argument("viscosities must satisfy 2 mu + 3 lambda >= 0");
  if (!(rho_floor >= 0.0)) throw std::invalid_argument("rho_floor must be non-negative");
  if (!(vacuum_threshold >= 0.0)) throw std::invalid_argument("vacuum_threshold must be non-negative");
}

State State::from_primitive(double t, ScalarField rho, const VectorField& u, ScalarField p,
                            const PhysParams& params) {
  State s;
  s.t = t;
  s.m = scale(u, rho);
  s.rho = std::move(rho);
  s.p = std::move(p);
  s.params = params;
  return s;
}

void State::validate() const {
  params.validate();
  const GridSpec& g = rho.grid();
  g.validate();
  require_same_grid(g, p.grid());
  if (m.components() != g.dim) throw std::invalid_argument("momentum must have grid.dim components");
  for (const auto& c : m.comp) require_same_grid(g, c.grid());
  if (!all_finite()) throw std::invalid_argument("state contains non-finite values");
  if (rho.min() < -kNegativeTolerance) throw std::invalid_argument("density below -1e-12");
  if (p.min() < -kNegativeTolerance) throw std::invalid_argument("pressure below -1e-12");
}

bool State::all_finite() const { return rho.all_finite() && p.all_finite() && m.all_finite(); }

VectorField velocity(const State& s) {
  const double floor = s.params.rho_floor;
  const ScalarField mm = norm2(s.m);
  VectorField u = s.m;
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    const double r = s.rho[i];
    if (r <= floor && std::sqrt(mm[i]) <= floor) {
      for (auto& c : u.comp) c[i] = 0.0;
      continue;
    }
    const double inv = 1.0 / std::max(r, floor);
    for (auto& c : u.comp) c[i] *= inv;
  }
  return u;
}

std::size_t vacuum_momentum_violations(const State& s) {
  const double floor = s.params.rho_floor;
  const ScalarField mm = norm2(s.m);
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.rho.size(); ++i)
    if (s.rho[i] <= floor && std::sqrt(mm[i]) > floor) ++count;
  return count;
}

ScalarField temperature(const State& s) {
  ScalarField theta(s.grid());
  for (std::size_t i = 0; i < theta.size(); ++i)
    theta[i] = s.rho[i] > s.params.vacuum_threshold ? s.p[i] / s.rho[i] : 0.0;
  return theta;
}

double vacuum_fraction(const State& s) {
  std::size_t count = 0;
  for (double r : s.rho.values())
    if (r <= s.params.vacuum_threshold) ++count;
  return static_cast<double>(count) / static_cast<double>(s.rho.size());
}

}  // namespace cnslab
