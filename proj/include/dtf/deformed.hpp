#pragma once

// Scalar deformed (Tsallis) logarithm and exponential.
//
//   log_p(x) = (x^(p-1) - 1) / (p-1)      for p != 1,  log_1 = log   (x > 0)
//   exp_p(x) = (x(p-1) + 1)^(1/(p-1))     for p != 1,  exp_1 = exp
//
// exp_p inverts log_p and is defined where x(p-1) + 1 > 0.  The exponent
// identities
//
//   log_p(x^q)   = q * log_a(x),   a = 1 + q(p-1)
//   (exp_p x)^q  = exp_b(q x),     b = 1 + (p-1)/q   (q != 0)
//
// let a power be pulled in and out of the deformation index; alpha_of and
// beta_of compute a and b.

namespace dtf {

// |p-1| below this uses the natural log/exp branch.  The switch error is
// O(|p-1| * log^2 x).
inline constexpr double kDeformSwitch = 1e-7;

// Smallest admissible value of x(p-1)+1 in exp_p.
inline constexpr double kExpDomainMargin = 1e-300;

// Largest magnitude allowed for log(exp_p result); beyond this the value
// would overflow (or round to zero) in double precision and is rejected.
inline constexpr double kExpLogRange = 709.0;

/// p-logarithm of x > 0. Throws std::domain_error for x <= 0.
double log_p(double x, double p);

/// p-exponential. Throws std::domain_error outside the admissible range
/// (x(p-1)+1 <= margin, or a result that would over/underflow).
double exp_p(double x, double p);

/// True iff exp_p(x) is defined with margin (same checks as exp_p, no throw).
bool in_exp_domain(double x, double p);

/// a = 1 + q(p-1), the index with log_p(x^q) = q log_a(x).
double alpha_of(double q, double p);

/// b = 1 + (p-1)/q, the index with (exp_p x)^q = exp_b(qx).
/// Throws std::invalid_argument at q = 0 (no limit is taken).
double beta_of(double p, double q);

}  // namespace dtf
