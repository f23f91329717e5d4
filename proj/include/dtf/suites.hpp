#pragma once

// Randomized property suites behind the CLI commands: the scalar exponent
// identities and derivative checks, the three-way equivalence of the phi
// routes, and the variational/one-sidedness checks.  Each runner reports
// the worst error seen and a serializable certificate for the first
// failure, so a nonzero exit can carry a concrete instance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtf/trace_models.hpp"
#include "dtf/variational.hpp"

namespace dtf {

struct CheckResult {
  std::string name;
  int trials = 0;
  double worst_error = 0.0;  // relative
  double tol = 0.0;
  bool pass = true;
  std::string first_failure;  // human-readable certificate
};

struct IdentitySuiteReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass = true;
};

/// Lemma-style scalar identity checks (power and exponential exponent
/// identities, round trips, finite-difference derivative checks) plus the
/// three-way matrix equivalence, `trials` instances each.
IdentitySuiteReport run_identity_suite(int trials, const std::vector<int>& dims,
                                       std::uint64_t seed, double scalar_tol = 1e-9,
                                       double matrix_tol = 1e-8,
                                       double derivative_tol = 1e-6);

struct VariationalSuiteReport {
  std::uint64_t seed = 0;
  int trace_instances = 0;   // random (Y, q) runs
  int phi_instances = 0;     // random (spec, A) runs
  int entropy_pairs = 0;
  double worst_equality_error = 0.0;  // objective at X = Y vs analytic, relative
  double worst_bound_violation = 0.0;
  double min_entropy_gap = 0.0;
  double equality_tol = 0.0;
  double bound_tol = 0.0;
  double entropy_tol = 0.0;
  bool pass = true;
  std::string first_failure;
};

VariationalSuiteReport run_variational_suite(int instances, int entropy_pairs,
                                             int restarts, int steps, std::uint64_t seed,
                                             double equality_tol = 1e-10,
                                             double bound_tol = 1e-6,
                                             double entropy_tol = 1e-10);

// Representative in-region cells (already inset from the stated
// boundaries) used for theorem sweeps; (p, q) for phi, (p, s) for upsilon.
std::vector<std::pair<double, double>> representative_phi_cells(double inset = 1e-3);
std::vector<std::pair<double, double>> representative_upsilon_cells(double inset = 1e-3);

}  // namespace dtf
