#include "cnslab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "cnslab/spectral.hpp"

namespace cnslab {

double InequalityReport::component(const std::string& key) const {
  for (const auto& [k, v] : components)
    if (k == key) return v;
  throw std::out_of_range("no component " + key + " in report " + name);
}

std::string to_ndjson(const InequalityReport& r, double t) {
  nlohmann::ordered_json j;
  j["type"] = "monitor";
  j["t"] = t;
  j["name"] = r.name;
  j["defined"] = r.defined;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["constant"] = r.constant;
  auto& comps = j["components"];
  comps = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.components) comps[k] = v;
  return j.dump();
}

double lemma31_coefficient(double mu, double lambda, double q) {
  if (!(mu > 0.0)) throw std::invalid_argument("lemma31_coefficient: mu must be positive");
  if (!(q >= 2.0)) throw std::invalid_argument("lemma31_coefficient: q must be >= 2");
  const double qm2 = q - 2.0;
  return q * (mu * (q - 1.0) - 0.25 * (lambda + mu) * qm2 * qm2);
}

namespace {

constexpr double kDelta = 1e-12;

double max_excess(const ScalarField& lhs2, const ScalarField& rhs2) {
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs2.size(); ++i) worst = std::max(worst, std::sqrt(lhs2[i]) - std::sqrt(rhs2[i]));
  return worst;
}

}  // namespace

double pointwise_gradient_inequality(const VectorField& u) {
  const TensorField J = jacobian(u);
  const int d = u.components();
  const GridSpec& g = u.grid();
  ScalarField lhs2(g);
  const ScalarField uu = norm2(u);
  for (std::size_t n = 0; n < lhs2.size(); ++n) {
    const double mag = std::sqrt(uu[n] + kDelta * kDelta);
    double acc = 0.0;
    for (int j = 0; j < g.dim; ++j) {
      double gj = 0.0;
      for (int i = 0; i < d; ++i) gj += u[i][n] * J(i, j)[n];
      acc += (gj / mag) * (gj / mag);
    }
    lhs2[n] = acc;
  }
  return max_excess(lhs2, frobenius2(J));
}

double spectral_gradient_violation(const VectorField& u) {
  ScalarField mag = norm2(u);
  for (auto& v : mag.values()) v = std::sqrt(v + kDelta * kDelta);
  return max_excess(norm2(gradient(mag)), frobenius2(jacobian(u)));
}

InequalityReport sobolev_ratio(const ScalarField& f) {
  InequalityReport r;
  r.name = "sobolev_l6";
  ScalarField centered = f;
  centered += -mean(f);
  r.lhs = lp_norm(centered, 6.0);
  const double grad = lp_norm(gradient(f), 2.0);
  r.components = {{"grad_l2", grad}};
  r.rhs = grad;
  if (grad == 0.0) {
    r.defined = false;
    return r;
  }
  r.ratio = r.lhs / grad;
  r.constant = r.ratio;
  return r;
}

InequalityReport log_estimate_monitor(const VectorField& u, double q) {
  if (!(q > 3.0 && q <= 6.0)) throw std::invalid_argument("log_estimate_monitor: q must lie in (3, 6]");
  const GridSpec& g = u.grid();
  const int d = g.dim;

  const TensorField J = jacobian(u);
  const double grad_inf = lp_norm(J, INFINITY);
  const double grad_l2 = lp_norm(J, 2.0);
  const double div_inf = sup_norm(divergence(u));
  const double curl_inf = lp_norm(curl(u), INFINITY);

  ScalarField hess2(g);
  for (int i = 0; i < d; ++i)
    for (int b = 0; b < d; ++b) {
      const VectorField second = gradient(J(i, b));
      hess2 += norm2(second);
    }
  for (auto& v : hess2.values()) v = std::sqrt(v);
  const double hess_lq = lp_norm(hess2, q);

  InequalityReport r;
  r.name = "log_gradient_estimate";
  r.lhs = grad_inf;
  const double log_term = std::log(std::numbers::e + hess_lq);
  r.components = {{"div_inf", div_inf}, {"curl_inf", curl_inf}, {"hess_lq", hess_lq},
                  {"log_term", log_term}, {"grad_l2", grad_l2}, {"q", q}};
  r.rhs = (div_inf + curl_inf) * log_term + grad_l2 + 1.0;
  r.ratio = r.lhs / r.rhs;
  r.constant = r.ratio;
  return r;
}

GronwallLedger GronwallLedger::from_records(std::span<const DiagnosticRecord> records) {
  GronwallLedger l;
  for (const auto& r : records)
    l.push(r.t, std::numbers::e + r.grad_rho_lq + r.grad_p_lq, 1.0 + r.grad_udot_l2 * r.grad_udot_l2);
  return l;
}

void GronwallLedger::push(double time, double f_value, double g_value) {
  t.push_back(time);
  f.push_back(f_value);
  g.push_back(g_value);
}

double gronwall_fit(const GronwallLedger& l) {
  const std::size_t n = l.size();
  if (n < 3 || l.f.size() != n || l.g.size() != n)
    throw std::invalid_argument("gronwall_fit needs at least 3 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(l.t[i] > l.t[i - 1])) throw std::invalid_argument("gronwall_fit needs strictly increasing times");

  double best = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = l.t[i] - l.t[i - 1];
    const double h1 = l.t[i + 1] - l.t[i];
    // Second-order derivative on a non-uniform stencil.
    const double fp = (-h1 / (h0 * (h0 + h1))) * l.f[i - 1] + ((h1 - h0) / (h0 * h1)) * l.f[i] +
                      (h0 / (h1 * (h0 + h1))) * l.f[i + 1];
    const double denom = l.g[i] * l.f[i] * std::log(l.f[i]);
    if (denom > 0.0) best = std::max(best, fp / denom);
  }
  return best;
}

}  // namespace cnslab
