#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cnslab/dynamics.hpp"

namespace cnslab::oracle {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< measured error or quantity
  double tolerance = 0.0;
  std::string detail;
};

using RhsImpl = std::function<Tendency(const State&)>;

/// gradient, divergence, curl, Laplacian and dealias_product at N = 8 against
/// the dense DFT-matrix operators; max-abs tolerance 1e-12.
CheckResult check_operators(int dim, std::uint64_t seed = 1);

/// Right-hand side against the dense term-by-term oracle at N = 8 (1e-10).
/// `impl` is the implementation under test, normally cnslab::rhs.
CheckResult check_rhs(int dim, const RhsImpl& impl, std::uint64_t seed = 1);

/// Material derivative against the dense pipeline at N = 8 (1e-10).
CheckResult check_material_derivative(int dim, std::uint64_t seed = 1);

/// Closed-form Lame inversion against a dense solve at N = 8 (1e-10), and
/// the operator residual of the closed form (1e-10).
CheckResult check_lame(int dim, std::uint64_t seed = 1);

/// integral of f^2 against the Parseval sum of the r2c coefficients (1e-12 relative).
CheckResult check_parseval(int dim, std::uint64_t seed = 1);

/// lemma31_coefficient(mu, lambda, 6) == 6 (mu - 4 lambda) on a 10 x 10 grid
/// of exactly representable parameters, with positivity iff mu > 4 lambda.
CheckResult check_coefficient_sweep();

/// lemma31_coefficient(5, 1, 6) == 6.
CheckResult check_coefficient_reference();

/// Manufactured smooth states: energy-law residual decreases over
/// N = 32, 64, 128 and stays below 1e-6 at N = 64; the momentum identity
/// residual stays below 1e-8 at N = 64.
CheckResult check_manufactured_convergence(std::uint64_t seed = 1);

/// Every check above, in a fixed order.
std::vector<CheckResult> run_verification_suite(const RhsImpl& impl = rhs);

}  // namespace cnslab::oracle
