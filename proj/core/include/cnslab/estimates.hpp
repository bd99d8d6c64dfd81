#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cnslab/diagnostics.hpp"
#include "cnslab/fields.hpp"

namespace cnslab {

/// Empirical check of an inequality lhs <= C * rhs.
///
/// `constant` is the smallest C that makes the inequality hold for the
/// sampled field; monitors report it and never fail on its size.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  std::vector<std::pair<std::string, double>> components;
  double rhs = 0.0;
  double ratio = 0.0;
  double constant = 0.0;
  bool defined = true;  ///< false when the ratio has no meaning (e.g. constant field)

  double component(const std::string& key) const;
};

/// One compact JSON object with "type":"monitor".
std::string to_ndjson(const InequalityReport& r, double t);

/// Coefficient q (mu (q-1) - (lambda + mu) (q-2)^2 / 4) bounding the
/// weighted-energy quadratic form from below; equals 6 (mu - 4 lambda) at q = 6.
/// Throws std::invalid_argument for q < 2 or mu <= 0.
double lemma31_coefficient(double mu, double lambda, double q);

/// max over nodes of |grad |u|| - |grad u|, clamped at zero, with
/// grad |u| = (grad u)^T u / |u| evaluated pointwise from the spectral
/// Jacobian and |u| regularised as sqrt(|u|^2 + 1e-24).
double pointwise_gradient_inequality(const VectorField& u);

/// Same excess with |u| differentiated spectrally instead. |u| is only
/// Lipschitz at zeros of u, so this does not converge under refinement;
/// reported alongside the pointwise value for comparison.
double spectral_gradient_violation(const VectorField& u);

/// ||f - mean f||_6 / ||grad f||_2 (periodic Poincare-Sobolev form).
/// Reports defined = false for a constant field.
InequalityReport sobolev_ratio(const ScalarField& f);

/// ||grad u||_inf against
///   (||div u||_inf + ||curl u||_inf) log(e + ||grad^2 u||_q) + ||grad u||_2 + 1.
/// Throws std::invalid_argument unless 3 < q <= 6.
InequalityReport log_estimate_monitor(const VectorField& u, double q = 4.0);

/// Samples of f = e + ||grad rho||_q + ||grad P||_q and g = 1 + ||grad udot||_2^2.
struct GronwallLedger {
  std::vector<double> t;
  std::vector<double> f;
  std::vector<double> g;

  static GronwallLedger from_records(std::span<const DiagnosticRecord> records);
  void push(double time, double f_value, double g_value);
  std::size_t size() const { return t.size(); }
};

/// max over interior samples of f' / (g f ln f), f' by non-uniform central
/// differences, clipped below at 0. Throws std::invalid_argument for fewer
/// than 3 samples or non-increasing times.
double gronwall_fit(const GronwallLedger& ledger);

}  // namespace cnslab
