#include "dtf/suites.hpp"

#include <cmath>
#include <sstream>

#include "dtf/deformed.hpp"
#include "dtf/rng.hpp"

namespace dtf {

namespace {

double rel_err(double a, double b) {
  return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

void update(CheckResult& c, double err, const std::string& instance) {
  c.trials += 1;
  if (err > c.worst_error) c.worst_error = err;
  if (err > c.tol && c.pass) {
    c.pass = false;
    c.first_failure = instance;
  }
}

std::string fmt_instance(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : ", ") << k << " = " << v;
    first = false;
  }
  return os.str();
}

// p sampled away from the natural-log switch window so the exponent
// identities are not polluted by the branch change
double sample_p(Rng& rng, double lo, double hi, double clearance = 1e-4) {
  for (;;) {
    const double p = rng.uniform(lo, hi);
    if (std::abs(p - 1.0) >= clearance) return p;
  }
}

double sample_away_from(Rng& rng, double lo, double hi, double avoid, double clearance) {
  for (;;) {
    const double v = rng.uniform(lo, hi);
    if (std::abs(v - avoid) >= clearance) return v;
  }
}

}  // namespace

IdentitySuiteReport run_identity_suite(int trials, const std::vector<int>& dims,
                                       std::uint64_t seed, double scalar_tol,
                                       double matrix_tol, double derivative_tol) {
  if (trials < 1 || dims.empty()) {
    throw std::invalid_argument("run_identity_suite: trials >= 1 and dims required");
  }
  IdentitySuiteReport report;
  report.seed = seed;

  CheckResult round_trip{"scalar round trip exp_p(log_p(x)) = x", 0, 0.0, scalar_tol};
  CheckResult power{"log_p(x^q) = q log_a(x)", 0, 0.0, scalar_tol};
  CheckResult expident{"(exp_p x)^q = exp_b(qx)", 0, 0.0, scalar_tol};
  CheckResult dlog{"d/dx log_p = x^(p-2)", 0, 0.0, derivative_tol};
  CheckResult dexp{"d/dx exp_p = exp_p(x)^(2-p)", 0, 0.0, derivative_tol};
  CheckResult equiv{"phi direct = algebraic = beta route", 0, 0.0, matrix_tol};

  Rng rng(mix_seed(seed, 0x1d));
  for (int t = 0; t < trials; ++t) {
    // round trip over a wide scale range; |(p-1) ln x| is capped so the
    // inverse stays well-conditioned in double
    {
      const double p = sample_p(rng, -2.0, 4.0);
      const double x =
          std::exp(rng.uniform(-6.9, 6.9) / std::max(1.0, std::abs(p - 1.0)));
      const double y = log_p(x, p);
      const double back = exp_p(y, p);
      update(round_trip, std::abs(back - x) / x, fmt_instance({{"x", x}, {"p", p}}));
    }
    // power identity
    {
      const double p = sample_p(rng, -2.0, 4.0);
      const double q = sample_away_from(rng, -3.0, 3.0, 0.0, 1e-2);
      const double x = std::exp(rng.uniform(-2.3, 2.3));
      const double a = alpha_of(q, p);
      const double lhs = log_p(std::pow(x, q), p);
      const double rhs = q * log_p(x, a);
      update(power, rel_err(lhs, rhs), fmt_instance({{"x", x}, {"p", p}, {"q", q}}));
    }
    // exponential identity, x drawn inside both domains
    {
      const double p = sample_p(rng, -2.0, 4.0);
      const double q = sample_away_from(rng, -3.0, 3.0, 0.0, 1e-2);
      const double b = beta_of(p, q);
      double x = 0.0;
      bool ok = false;
      for (int tries = 0; tries < 200 && !ok; ++tries) {
        x = rng.uniform(-5.0, 5.0);
        ok = in_exp_domain(x, p) && in_exp_domain(q * x, b) &&
             std::abs(q * std::log(exp_p(x, p))) < 300.0;
      }
      if (ok) {
        const double lhs = std::pow(exp_p(x, p), q);
        const double rhs = exp_p(q * x, b);
        update(expident, rel_err(lhs, rhs), fmt_instance({{"x", x}, {"p", p}, {"q", q}}));
      }
    }
    // derivative checks by central differences on [0.1, 10]
    {
      const double p = sample_p(rng, -2.0, 4.0);
      const double x = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
      const double h = 1e-5 * std::max(1.0, std::abs(x));
      const double fd = (log_p(x + h, p) - log_p(x - h, p)) / (2.0 * h);
      const double exact = std::pow(x, p - 2.0);
      update(dlog, std::abs(fd - exact) / std::abs(exact),
             fmt_instance({{"x", x}, {"p", p}}));

      // exp_p side: keep y small and 1+(p-1)y moderate so the truncation
      // error of the central difference stays below the tolerance
      const double y = rng.uniform(-2.0, 2.0);
      const double u = 1.0 + (p - 1.0) * y;
      const double hy = 1e-5 * std::max(1.0, std::abs(y));
      if (u >= 0.2 && u <= 5.0 && in_exp_domain(y + hy, p) && in_exp_domain(y - hy, p)) {
        const double fde = (exp_p(y + hy, p) - exp_p(y - hy, p)) / (2.0 * hy);
        const double exacte = std::pow(exp_p(y, p), 2.0 - p);
        update(dexp, std::abs(fde - exacte) / std::abs(exacte),
               fmt_instance({{"y", y}, {"p", p}}));
      }
    }
    // three-way matrix equivalence
    {
      const double p = sample_p(rng, 0.0, 3.0, 1e-3);
      const double q = sample_away_from(rng, -2.0, 2.0, 0.0, 1e-3);
      const int dim = dims[rng.uniform_int(0, static_cast<int>(dims.size()) - 1)];
      TraceFunctionSpec spec;
      spec.p = p;
      spec.q = q;
      spec.H = random_contraction(dim, mix_seed(seed, 3 * t + 1));
      spec.L = random_signed(dim, p > 1.0 ? 1 : -1, mix_seed(seed, 3 * t + 2));
      const cmat A = random_pd(dim, mix_seed(seed, 3 * t + 3));
      const double v1 = phi_direct(spec, A);
      const double v2 = phi_algebraic(spec, A);
      const double v3 = phi_beta(spec, A);
      const double scale = std::max({std::abs(v1), std::abs(v2), std::abs(v3), 1e-300});
      const double err = std::max(std::abs(v1 - v2), std::abs(v1 - v3)) / scale;
      update(equiv, err, fmt_instance({{"p", p}, {"q", q}, {"dim", double(dim)}}));
    }
  }

  report.checks = {round_trip, power, expident, dlog, dexp, equiv};
  for (const auto& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

VariationalSuiteReport run_variational_suite(int instances, int entropy_pairs,
                                             int restarts, int steps, std::uint64_t seed,
                                             double equality_tol, double bound_tol,
                                             double entropy_tol) {
  if (instances < 1 || entropy_pairs < 0) {
    throw std::invalid_argument("run_variational_suite: counts must be positive");
  }
  VariationalSuiteReport rep;
  rep.seed = seed;
  rep.equality_tol = equality_tol;
  rep.bound_tol = bound_tol;
  rep.entropy_tol = entropy_tol;
  rep.min_entropy_gap = std::numeric_limits<double>::infinity();

  Rng rng(mix_seed(seed, 0x7a));
  auto fail = [&](const std::string& what) {
    if (rep.pass) rep.first_failure = what;
    rep.pass = false;
  };

  // random (Y, q): Tr Y as max/min of the trace functional
  for (int t = 0; t < instances; ++t) {
    const int n = rng.uniform_int(2, 3);
    const double q = rng.uniform(-1.0, 3.5);
    const cmat Y = random_pd(n, mix_seed(seed, 100 + t));
    const double eq =
        std::abs(trace_variation_objective(Y, Y, q) - Y.trace().real()) /
        (1.0 + std::abs(Y.trace().real()));
    rep.worst_equality_error = std::max(rep.worst_equality_error, eq);
    if (eq > equality_tol) fail("trace objective at X = Y deviates from Tr Y");
    const VariationalResult res =
        verify_trace_variation(Y, q, restarts, steps, mix_seed(seed, 200 + t));
    rep.worst_bound_violation = std::max(rep.worst_bound_violation, res.bound_violation);
    if (res.bound_violation > bound_tol) fail("trace variation bound crossed");
    rep.trace_instances += 1;
  }

  // random (spec, A): phi as sup/inf of F
  for (int t = 0; t < instances; ++t) {
    const int n = rng.uniform_int(2, 3);
    const double p = sample_p(rng, 0.0, 3.0, 0.05);
    const double q = sample_away_from(rng, -2.0, 2.0, 0.0, 0.05);
    TraceFunctionSpec spec;
    spec.p = p;
    spec.q = q;
    spec.H = random_contraction(n, mix_seed(seed, 300 + t));
    spec.L = random_signed(n, p > 1.0 ? 1 : -1, mix_seed(seed, 400 + t));
    const cmat A = random_pd(n, mix_seed(seed, 500 + t));
    const double analytic = phi_direct(spec, A);
    const cmat Y = variational_point(spec, A);
    const double eq =
        std::abs(F_of(Y, A, spec) - analytic) / (1.0 + std::abs(analytic));
    rep.worst_equality_error = std::max(rep.worst_equality_error, eq);
    if (eq > equality_tol) fail("F at X = Y deviates from phi");
    const VariationalResult res =
        optimize_F(spec, A, restarts, steps, mix_seed(seed, 600 + t));
    rep.worst_bound_violation = std::max(rep.worst_bound_violation, res.bound_violation);
    if (res.bound_violation > bound_tol) fail("F one-sided bound crossed");
    rep.phi_instances += 1;
  }

  for (int t = 0; t < entropy_pairs; ++t) {
    const int n = rng.uniform_int(2, 5);
    const cmat X = random_pd(n, mix_seed(seed, 700 + 2 * t));
    const cmat Y = random_pd(n, mix_seed(seed, 701 + 2 * t));
    const double gap = relative_entropy_gap(X, Y);
    rep.min_entropy_gap = std::min(rep.min_entropy_gap, gap);
    if (gap < -entropy_tol) fail("relative entropy gap negative");
    rep.entropy_pairs += 1;
  }
  if (entropy_pairs == 0) rep.min_entropy_gap = 0.0;
  return rep;
}

std::vector<std::pair<double, double>> representative_phi_cells(double e) {
  std::vector<std::pair<double, double>> cells;
  const double p01[] = {e, 0.5, 1.0 - e};
  const double p12[] = {1.0 + e, 1.5, 2.0 - e};
  const double p23[] = {2.0 + e, 2.5, 3.0 - e};
  const double q01[] = {e, 0.5, 1.0 - e};
  const double qneg[] = {-e, -0.75, -1.5};
  const double qhi[] = {1.0 + e, 1.6, 2.2};
  for (double p : p01)
    for (double q : q01) cells.emplace_back(p, q);  // concave (p in [0,1])
  for (double p : p12)
    for (double q : q01) cells.emplace_back(p, q);  // concave (p in [1,2])
  for (double p : p01)
    for (double q : qneg) cells.emplace_back(p, q);  // convex
  for (double p : p12)
    for (double q : qneg) cells.emplace_back(p, q);  // convex
  for (double p : p23)
    for (double q : qhi) cells.emplace_back(p, q);  // convex
  return cells;
}

std::vector<std::pair<double, double>> representative_upsilon_cells(double e) {
  std::vector<std::pair<double, double>> cells;
  auto add = [&](double p, double s) { cells.emplace_back(p, s); };
  // concave: -1 <= p <= 0, 1/p <= s <= 0
  for (double p : {-1.0 + e, -0.6, -0.35}) {
    const double lo = 1.0 / p;
    add(p, lo * (1.0 - e));
    add(p, 0.5 * lo);
    add(p, -e);
  }
  // concave: 0 <= p <= 1, 0 <= s <= 1/p
  for (double p : {0.35, 0.6, 1.0 - e}) {
    const double hi = 1.0 / p;
    add(p, e);
    add(p, 0.5 * hi);
    add(p, hi * (1.0 - e));
  }
  // convex: -1 <= p <= 0, s >= 0
  for (double p : {-1.0 + e, -0.5, -e}) {
    add(p, e);
    add(p, 1.2);
    add(p, 2.5);
  }
  // convex: 0 <= p <= 1, s <= 0
  for (double p : {e, 0.5, 1.0 - e}) {
    add(p, -e);
    add(p, -1.2);
    add(p, -2.5);
  }
  // convex: 1 <= p <= 2, s >= 1/p
  for (double p : {1.0 + e, 1.5, 2.0 - e}) {
    const double lo = 1.0 / p;
    add(p, lo * (1.0 + e));
    add(p, lo + 0.75);
    add(p, 3.0);
  }
  return cells;
}

}  // namespace dtf
