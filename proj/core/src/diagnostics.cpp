#include "cnslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cnslab/scenario.hpp"
#include "cnslab/spectral.hpp"

namespace cnslab {
namespace {

double l2(const VectorField& v) { return lp_norm(v, 2.0); }

ScalarField pow_field(const ScalarField& f, double q) {
  ScalarField out = f;
  for (auto& v : out.values()) v = std::pow(v, q);
  return out;
}

}  // namespace

double kinetic_energy(const State& s) {
  const VectorField u = velocity(s);
  return 0.5 * integrate(dot(s.m, u));
}

double internal_energy(const State& s) { return integrate(s.p); }

double total_energy(const State& s) { return kinetic_energy(s) + internal_energy(s); }

double weighted_kinetic(const State& s, int q) {
  if (q != 2 && q != 4 && q != 6) throw std::invalid_argument("weighted_kinetic: q must be 2, 4 or 6");
  const ScalarField uu = norm2(velocity(s));
  return integrate(s.rho * pow_field(uu, 0.5 * q));
}

double dissipation_functional(const State& s) {
  const VectorField u = velocity(s);
  const ScalarField grad2 = frobenius2(jacobian(u));
  const ScalarField uu = norm2(u);
  ScalarField w(s.grid());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = grad2[i] * (1.0 + uu[i] + uu[i] * uu[i]);
  return integrate(w);
}

ScalarField effective_viscous_flux(const State& s) {
  const VectorField u = velocity(s);
  ScalarField G = divergence(u) * (2.0 * s.params.mu + s.params.lambda);
  G -= s.p;
  G += mean(s.p);
  return G;
}

VectorField vorticity(const State& s) { return curl(velocity(s)); }

MaterialDerivative material_derivative(const State& s, const Tendency& tend) {
  const GridSpec& g = s.grid();
  const int d = g.dim;
  const PhysParams& prm = s.params;
  const VectorField u = velocity(s);
  const TensorField J = jacobian(u);

  MaterialDerivative out{VectorField(g), 0};
  for (int i = 0; i < d; ++i) {
    ScalarField adv(g);
    for (int j = 0; j < d; ++j) adv += u[j] * J(i, j);
    adv = truncate(adv);
    for (std::size_t n = 0; n < adv.size(); ++n) {
      const double ut = (tend.d_m[i][n] - u[i][n] * tend.d_rho[n]) / std::max(s.rho[n], prm.rho_floor);
      out.udot[i][n] = ut + adv[n];
    }
  }
  for (std::size_t n = 0; n < s.rho.size(); ++n) {
    if (s.rho[n] <= prm.vacuum_threshold) {
      for (int i = 0; i < d; ++i) out.udot[i][n] = 0.0;
      ++out.masked_nodes;
    }
  }
  return out;
}

double momentum_identity_residual(const State& s) { return momentum_identity_residual(s, rhs(s)); }

double momentum_identity_residual(const State& s, const Tendency& tend) {
  const MaterialDerivative md = material_derivative(s, tend);
  const VectorField rho_udot = scale(md.udot, s.rho);
  const VectorField u = velocity(s);
  VectorField right = gradient(effective_viscous_flux(s));
  right -= curl_of_vorticity(curl(u)) * s.params.mu;
  const double num = l2(rho_udot - right);
  return num / std::max(l2(rho_udot), kResidualEpsilon);
}

EnergyLawResidual energy_law_residual(const State& s) { return energy_law_residual(s, rhs(s)); }

EnergyLawResidual energy_law_residual(const State& s, const Tendency& tend) {
  const GridSpec& g = s.grid();
  const int d = g.dim;
  const PhysParams& prm = s.params;
  const VectorField u = velocity(s);
  const ScalarField uu = norm2(u);
  const ScalarField divu = divergence(u);
  const TensorField J = jacobian(u);

  // (rho E)_t with rho E = P + |m|^2 / (2 rho).
  ScalarField rhoE_t = tend.d_p;
  rhoE_t += dot(u, tend.d_m);
  rhoE_t -= 0.5 * (uu * tend.d_rho);

  ScalarField rhoE = s.p;
  rhoE += 0.5 * dot(s.m, u);

  VectorField adv(g), F(g);
  const VectorField grad_uu = gradient(uu);
  for (int j = 0; j < d; ++j) {
    adv[j] = dealias_product(rhoE, u[j]);
    ScalarField conv(g);
    for (int i = 0; i < d; ++i) conv += u[i] * J(j, i);
    F[j] = grad_uu[j] * (0.5 * prm.mu);
    F[j] += truncate(conv) * prm.mu;
    F[j] += dealias_product(u[j], divu) * prm.lambda;
    F[j] -= dealias_product(s.p, u[j]);
  }
  const ScalarField divF = divergence(F);
  ScalarField res = rhoE_t + divergence(adv);
  res -= divF;

  EnergyLawResidual out;
  out.relres = lp_norm(res, 2.0) / (lp_norm(divF, 2.0) + kResidualEpsilon);
  out.reliable = vacuum_fraction(s) <= 0.1;
  return out;
}

DiagnosticRecord evaluate_diagnostics(const State& s, const DiagnosticOptions& opt) {
  DiagnosticRecord r;
  r.t = s.t;
  r.q_tilde = opt.q_tilde;
  r.mass = integrate(s.rho);
  r.kinetic_energy = kinetic_energy(s);
  r.internal_energy = internal_energy(s);
  r.total_energy = r.kinetic_energy + r.internal_energy;
  r.weighted_kinetic_2 = weighted_kinetic(s, 2);
  r.weighted_kinetic_4 = weighted_kinetic(s, 4);
  r.weighted_kinetic_6 = weighted_kinetic(s, 6);
  r.dissipation = dissipation_functional(s);

  const ScalarField theta = temperature(s);
  r.sup_rho = sup_norm(s.rho);
  r.min_rho = s.rho.min();
  r.min_p = s.p.min();
  r.min_theta = theta.min();
  double sup_theta = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    if (s.rho[i] > s.params.vacuum_threshold) sup_theta = std::max(sup_theta, theta[i]);
  r.sup_theta = sup_theta;
  r.M = blowup_monitor(s);
  r.vacuum_fraction = vacuum_fraction(s);

  const VectorField u = velocity(s);
  r.grad_u_l2 = lp_norm(jacobian(u), 2.0);
  r.grad_rho_lq = lp_norm(gradient(s.rho), opt.q_tilde);
  r.grad_p_lq = lp_norm(gradient(s.p), opt.q_tilde);
  r.compat_g_norm = compatibility_residual(s).g_norm;

  if (opt.with_residuals) {
    const Tendency tend = rhs(s);
    const MaterialDerivative md = material_derivative(s, tend);
    r.grad_udot_l2 = lp_norm(jacobian(md.udot), 2.0);
    r.momentum_identity_relres = momentum_identity_residual(s, tend);
    const EnergyLawResidual el = energy_law_residual(s, tend);
    r.energy_law_relres = el.relres;
    r.energy_law_reliable = el.reliable;
  }
  return r;
}

// --- Serialization ----------------------------------------------------------

namespace {

struct Column {
  const char* name;
  double DiagnosticRecord::*field;
};

// Column order for CSV and key order for NDJSON.
constexpr Column kColumns[] = {
    {"t", &DiagnosticRecord::t},
    {"dt", &DiagnosticRecord::dt},
    {"M", &DiagnosticRecord::M},
    {"mass", &DiagnosticRecord::mass},
    {"energy", &DiagnosticRecord::total_energy},
    {"kinetic_energy", &DiagnosticRecord::kinetic_energy},
    {"internal_energy", &DiagnosticRecord::internal_energy},
    {"sup_rho", &DiagnosticRecord::sup_rho},
    {"sup_theta", &DiagnosticRecord::sup_theta},
    {"min_rho", &DiagnosticRecord::min_rho},
    {"min_theta", &DiagnosticRecord::min_theta},
    {"min_p", &DiagnosticRecord::min_p},
    {"min_rho_preclip", &DiagnosticRecord::min_rho_preclip},
    {"min_p_preclip", &DiagnosticRecord::min_p_preclip},
    {"vacuum_fraction", &DiagnosticRecord::vacuum_fraction},
    {"weighted_kinetic_2", &DiagnosticRecord::weighted_kinetic_2},
    {"weighted_kinetic_4", &DiagnosticRecord::weighted_kinetic_4},
    {"weighted_kinetic_6", &DiagnosticRecord::weighted_kinetic_6},
    {"dissipation", &DiagnosticRecord::dissipation},
    {"grad_u_l2", &DiagnosticRecord::grad_u_l2},
    {"q_tilde", &DiagnosticRecord::q_tilde},
    {"grad_rho_lq", &DiagnosticRecord::grad_rho_lq},
    {"grad_p_lq", &DiagnosticRecord::grad_p_lq},
    {"grad_udot_l2", &DiagnosticRecord::grad_udot_l2},
    {"compat_g_norm", &DiagnosticRecord::compat_g_norm},
    {"momentum_identity_relres", &DiagnosticRecord::momentum_identity_relres},
    {"energy_law_relres", &DiagnosticRecord::energy_law_relres},
    {"clip_budget", &DiagnosticRecord::clip_budget},
};

}  // namespace

std::string to_ndjson(const DiagnosticRecord& r) {
  nlohmann::ordered_json j;
  j["type"] = "diagnostic";
  j["step"] = r.step;
  for (const auto& c : kColumns) j[c.name] = r.*(c.field);
  j["energy_law_reliable"] = r.energy_law_reliable;
  return j.dump();
}

DiagnosticRecord record_from_ndjson(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  if (j.value("type", "") != "diagnostic") throw std::invalid_argument("not a diagnostic record");
  DiagnosticRecord r;
  r.step = j.at("step").get<std::uint64_t>();
  for (const auto& c : kColumns) r.*(c.field) = j.at(c.name).get<double>();
  r.energy_law_reliable = j.at("energy_law_reliable").get<bool>();
  return r;
}

std::string csv_header() {
  std::string out = "step";
  for (const auto& c : kColumns) {
    out += ',';
    out += c.name;
  }
  out += ",energy_law_reliable";
  return out;
}

std::string to_csv_row(const DiagnosticRecord& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.step;
  for (const auto& c : kColumns) os << ',' << r.*(c.field);
  os << ',' << (r.energy_law_reliable ? 1 : 0);
  return os.str();
}

}  // namespace cnslab
