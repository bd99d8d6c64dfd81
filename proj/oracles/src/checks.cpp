#include "cnslab/oracles/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cnslab/diagnostics.hpp"
#include "cnslab/estimates.hpp"
#include "cnslab/lame.hpp"
#include "cnslab/oracles/dense.hpp"
#include "cnslab/scenario.hpp"
#include "cnslab/spectral.hpp"

namespace cnslab::oracle {

namespace {

CheckResult make(std::string name, double value, double tol, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.value = value;
  r.tolerance = tol;
  r.passed = std::isfinite(value) && value <= tol;
  r.detail = std::move(detail);
  return r;
}

std::string dim_tag(int dim) { return std::to_string(dim) + "d"; }

}  // namespace

CheckResult check_operators(int dim, std::uint64_t seed) {
  const GridSpec g = GridSpec::cube(dim, 8);
  const DenseOps ops(g);
  const ScalarField f = random_field(g, -1.0, 1.0, seed);
  const ScalarField h = random_field(g, -1.0, 1.0, seed + 101);
  const VectorField u = random_vector(g, -1.0, 1.0, seed + 202);

  const double e_grad = max_abs_diff(gradient(f), ops.gradient(f));
  const double e_div = max_abs_diff(divergence(u), ops.divergence(u));
  const double e_curl = max_abs_diff(curl(u), ops.curl(u));
  const double e_lap = max_abs_diff(laplacian(f), ops.laplacian(f));
  const double e_prod = max_abs_diff(dealias_product(f, h), ops.product(f, h));
  const double worst = std::max({e_grad, e_div, e_curl, e_lap, e_prod});
  std::ostringstream os;
  os << "grad " << e_grad << " div " << e_div << " curl " << e_curl << " lap " << e_lap << " product " << e_prod;
  return make("operators_dense_" + dim_tag(dim), worst, 1e-12, os.str());
}

CheckResult check_rhs(int dim, const RhsImpl& impl, std::uint64_t seed) {
  const GridSpec g = GridSpec::cube(dim, 8);
  const DenseOps ops(g);
  PhysParams prm;
  prm.mu = 0.05;
  prm.lambda = 0.02;
  const State s = random_state(g, prm, seed);
  const Tendency t = impl(s);
  const DenseTendency o = dense_rhs(ops, s);
  const double e_rho = max_abs_diff(t.d_rho, o.d_rho);
  const double e_m = max_abs_diff(t.d_m, o.d_m);
  const double e_p = max_abs_diff(t.d_p, o.d_p);
  std::ostringstream os;
  os << "d_rho " << e_rho << " d_m " << e_m << " d_p " << e_p;
  return make("rhs_dense_" + dim_tag(dim), std::max({e_rho, e_m, e_p}), 1e-10, os.str());
}

CheckResult check_material_derivative(int dim, std::uint64_t seed) {
  const GridSpec g = GridSpec::cube(dim, 8);
  const DenseOps ops(g);
  PhysParams prm;
  prm.mu = 0.05;
  prm.lambda = 0.02;
  const State s = random_state(g, prm, seed);
  const MaterialDerivative md = material_derivative(s, rhs(s));
  const VectorField o = dense_material_derivative(ops, s, dense_rhs(ops, s));
  return make("material_derivative_dense_" + dim_tag(dim), max_abs_diff(md.udot, o), 1e-10);
}

CheckResult check_lame(int dim, std::uint64_t seed) {
  const GridSpec g = GridSpec::cube(dim, 8);
  const DenseOps ops(g);
  PhysParams prm;
  prm.mu = 0.7;
  prm.lambda = 0.3;
  VectorField f = random_vector(g, -1.0, 1.0, seed);
  for (auto& c : f.comp) c += -mean(c);
  const LameSolution sol = solve_lame(f, prm);
  const VectorField ref = dense_lame_solve(ops, f, prm);
  const double diff = max_abs_diff(sol.v, ref);
  std::ostringstream os;
  os << "dense " << diff << " residual " << sol.residual;
  return make("lame_dense_" + dim_tag(dim), std::max(diff, sol.residual), 1e-10, os.str());
}

CheckResult check_parseval(int dim, std::uint64_t seed) {
  const GridSpec g = GridSpec::cube(dim, 8, 1.5);
  const ScalarField f = random_field(g, -1.0, 1.0, seed);
  const double lhs = integrate(f * f);
  const Spectrum s = forward(f);
  const auto& md = modes(g);
  const int n = g.n;
  double sum = 0.0;
  for (std::size_t i = 0; i < md.size(); ++i) {
    const int last = md[i].m[g.dim - 1];
    const double weight = (last == 0 || 2 * last == n) ? 1.0 : 2.0;
    sum += weight * std::norm(s.coef[i]);
  }
  const double nodes = static_cast<double>(g.size());
  const double rhs_val = g.volume() * sum / (nodes * nodes);
  return make("parseval_" + dim_tag(dim), std::abs(lhs - rhs_val) / std::abs(rhs_val), 1e-12);
}

CheckResult check_coefficient_sweep() {
  std::size_t bad = 0;
  double worst = 0.0;
  for (int i = 1; i <= 10; ++i)
    for (int j = -2; j <= 7; ++j) {
      const double mu = 0.25 * i;
      const double lambda = 0.125 * j;
      const double c = lemma31_coefficient(mu, lambda, 6.0);
      const double expect = 6.0 * (mu - 4.0 * lambda);
      worst = std::max(worst, std::abs(c - expect));
      if (c != expect || ((c > 0.0) != (mu > 4.0 * lambda))) ++bad;
    }
  CheckResult r = make("coefficient_sweep", worst, 0.0, std::to_string(bad) + " mismatches over 100 points");
  r.passed = r.passed && bad == 0;
  return r;
}

CheckResult check_coefficient_reference() {
  const double c = lemma31_coefficient(5.0, 1.0, 6.0);
  return make("coefficient_mu5_lambda1", std::abs(c - 6.0), 0.0, "coefficient " + std::to_string(c));
}

CheckResult check_manufactured_convergence(std::uint64_t seed) {
  PhysParams prm;
  prm.mu = 0.05;
  prm.lambda = 0.01;
  Scenario sc;
  sc.kind = ScenarioKind::manufactured;
  sc.amplitude = 0.35;
  sc.max_mode = 3;
  sc.seed = seed;
  std::vector<double> en;
  double mom64 = 0.0;
  for (int n : {32, 64, 128}) {
    const State s = make_scenario(sc, GridSpec::cube(2, n), prm);
    const Tendency t = rhs(s);
    en.push_back(energy_law_residual(s, t).relres);
    if (n == 64) mom64 = momentum_identity_residual(s, t);
  }
  const bool monotone = en[0] > en[1] && en[1] > en[2];
  std::ostringstream os;
  os << "energy law " << en[0] << " " << en[1] << " " << en[2] << "; momentum identity (64) " << mom64;
  CheckResult r = make("manufactured_convergence", en[1], 1e-6, os.str());
  r.passed = r.passed && monotone && mom64 <= 1e-8;
  return r;
}

std::vector<CheckResult> run_verification_suite(const RhsImpl& impl) {
  std::vector<CheckResult> out;
  for (int dim : {2, 3}) {
    out.push_back(check_operators(dim));
    out.push_back(check_rhs(dim, impl));
    out.push_back(check_material_derivative(dim));
    out.push_back(check_lame(dim));
    out.push_back(check_parseval(dim));
  }
  out.push_back(check_coefficient_sweep());
  out.push_back(check_coefficient_reference());
  out.push_back(check_manufactured_convergence());
  return out;
}

}  // namespace cnslab::oracle
