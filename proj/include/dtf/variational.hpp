#pragma once

// Numerical verification of the variational representation
//
//   Tr Y = max_{X>0} { Tr X - Tr X^(2-q) (log_q X - log_q Y) }   q <= 2
//        = min_{X>0} { ...same functional... }                   q >  2
//
// and of phi(A) = sup/inf_{X>0} F(X, A) (sup for beta <= 2, inf beyond).
// The optimizer works in the unconstrained chart X = exp(S) over Hermitian
// S with finite-difference gradients; it is a verification aid, so every
// objective evaluation is checked against the one-sided bound, not just
// the final iterate.

#include <cstdint>

#include "dtf/trace_models.hpp"

namespace dtf {

enum class OptimizeDirection { sup, inf };

struct VariationalResult {
  double analytic_value = 0.0;    // Tr Y, or phi(A)
  double best_found = 0.0;        // best objective value over all evaluations
  double optimizer_distance = 0.0;  // Frobenius distance of the best X to Y
  double bound_violation = 0.0;   // worst relative crossing of the sup/inf bound
  long iterations = 0;            // accepted steps, summed over restarts
  OptimizeDirection direction = OptimizeDirection::sup;
};

/// Tr X - Tr X^(2-q) (log_q X - log_q Y); equals Tr Y at X = Y.
double trace_variation_objective(const cmat& X, const cmat& Y, double q);

/// Multi-restart check of the representation above for a given positive
/// definite Y.  The start X = Y is always included, pinning the analytic
/// value; the remaining restarts draw Hermitian S with |S|_F <= 2.
VariationalResult verify_trace_variation(const cmat& Y, double q, int restarts = 10,
                                         int steps = 60, std::uint64_t seed = 1);

/// Tr X (log X - log Y) - Tr(X - Y); nonnegative for positive definite X, Y.
double relative_entropy_gap(const cmat& X, const cmat& Y);

/// Same optimizer applied to F(., A); analytic value is phi_direct(spec, A).
VariationalResult optimize_F(const TraceFunctionSpec& spec, const cmat& A,
                             int restarts = 10, int steps = 60, std::uint64_t seed = 1);

}  // namespace dtf
