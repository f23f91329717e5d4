#include "dtf/deformed.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dtf {

namespace {

void require_finite_param(double p) {
  if (!std::isfinite(p)) {
    throw std::invalid_argument("deformation parameter p must be finite");
  }
}

// log of the value exp_p(x) would have, or a quiet NaN when x is outside
// the domain.  Shared by exp_p and in_exp_domain so the two always agree.
double exp_p_log_value(double x, double p) {
  if (std::abs(p - 1.0) < kDeformSwitch) return x;
  const double w = x * (p - 1.0);
  if (!(1.0 + w > kExpDomainMargin)) return std::nan("");
  return std::log1p(w) / (p - 1.0);
}

}  // namespace

double log_p(double x, double p) {
  require_finite_param(p);
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "log_p requires x > 0, got x = " << x;
    throw std::domain_error(os.str());
  }
  const double lx = std::log(x);
  if (std::abs(p - 1.0) < kDeformSwitch) return lx;
  // expm1 keeps full precision as p -> 1 where x^(p-1)-1 cancels.
  return std::expm1((p - 1.0) * lx) / (p - 1.0);
}

double exp_p(double x, double p) {
  require_finite_param(p);
  if (!std::isfinite(x)) throw std::domain_error("exp_p requires finite x");
  const double t = exp_p_log_value(x, p);
  if (std::isnan(t)) {
    std::ostringstream os;
    os << "exp_p: x = " << x << " outside the domain for p = " << p
       << " (x(p-1)+1 <= " << kExpDomainMargin << ")";
    throw std::domain_error(os.str());
  }
  if (std::abs(t) > kExpLogRange) {
    std::ostringstream os;
    os << "exp_p: result out of double range (log magnitude " << t
       << ") for x = " << x << ", p = " << p;
    throw std::domain_error(os.str());
  }
  return std::exp(t);
}

bool in_exp_domain(double x, double p) {
  if (!std::isfinite(x) || !std::isfinite(p)) return false;
  const double t = exp_p_log_value(x, p);
  return !std::isnan(t) && std::abs(t) <= kExpLogRange;
}

double alpha_of(double q, double p) {
  require_finite_param(p);
  if (!std::isfinite(q)) throw std::invalid_argument("alpha_of: q must be finite");
  return 1.0 + q * (p - 1.0);
}

double beta_of(double p, double q) {
  require_finite_param(p);
  if (!std::isfinite(q)) throw std::invalid_argument("beta_of: q must be finite");
  if (q == 0.0) {
    throw std::invalid_argument("beta_of: degenerate parameter q = 0");
  }
  return 1.0 + (p - 1.0) / q;
}

}  // namespace dtf
