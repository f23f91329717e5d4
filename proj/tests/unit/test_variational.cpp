#include <doctest.h>

#include <cmath>

#include "dtf/deformed.hpp"
#include "dtf/rng.hpp"
#include "dtf/variational.hpp"

using namespace dtf;

namespace {

cmat diag2(double a, double b) {
  cmat A = cmat::Zero(2, 2);
  A(0, 0) = a;
  A(1, 1) = b;
  return A;
}

}  // namespace

TEST_CASE("objective at X = Y is exactly Tr Y") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const cmat Y = random_pd(3, s);
    for (double q : {-1.0, 0.5, 1.0, 2.0, 3.0}) {
      const double v = trace_variation_objective(Y, Y, q);
      CHECK(std::abs(v - Y.trace().real()) <= 1e-10 * (1.0 + Y.trace().real()));
    }
  }
}

TEST_CASE("classical branch q = 1 matches Tr X - Tr X(log X - log Y)") {
  const cmat X = diag2(2.0, 3.0);
  const cmat Y = diag2(1.0, 2.0);
  const double expect = 5.0 - (2.0 * std::log(2.0) + 3.0 * std::log(1.5));
  CHECK(trace_variation_objective(X, Y, 1.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("max branch: no X beats Tr Y for q <= 2") {
  Rng rng(53);
  for (std::uint64_t s = 1; s <= 30; ++s) {
    const cmat Y = random_pd(2, s);
    const double q = rng.uniform(-1.0, 2.0);
    const cmat X = random_pd(2, s + 1000);
    CHECK(trace_variation_objective(X, Y, q) <=
          Y.trace().real() + 1e-9 * (1.0 + Y.trace().real()));
  }
}

TEST_CASE("min branch: optimizer stays above Tr Y for q > 2") {
  const cmat Y = diag2(1.0, 2.0);
  const auto res = verify_trace_variation(Y, 3.0, 20, 40, 7);
  CHECK(res.direction == OptimizeDirection::inf);
  CHECK(res.analytic_value == doctest::Approx(3.0));
  CHECK(res.best_found >= 3.0 - 1e-6 * 4.0);
  CHECK(res.bound_violation <= 1e-6);
}

TEST_CASE("optimizer respects the one-sided bound on every evaluation") {
  Rng rng(54);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const int n = 2 + static_cast<int>(s % 2);
    const cmat Y = random_pd(n, s);
    const double q = rng.uniform(-1.0, 3.5);
    const auto res = verify_trace_variation(Y, q, 6, 30, s);
    CHECK(res.bound_violation <= 1e-6);
    CHECK(res.direction == (q <= 2.0 ? OptimizeDirection::sup : OptimizeDirection::inf));
    // best stays pinned at the analytic value thanks to the X = Y start
    CHECK(std::abs(res.best_found - res.analytic_value) <=
          1e-6 * (1.0 + std::abs(res.analytic_value)));
  }
}

TEST_CASE("relative entropy gap") {
  const cmat X = random_pd(3, 11);
  CHECK(relative_entropy_gap(X, X) == doctest::Approx(0.0).epsilon(1e-14));
  // scalars: 2 ln 2 - 1
  cmat a(1, 1), b(1, 1);
  a(0, 0) = 2.0;
  b(0, 0) = 1.0;
  CHECK(relative_entropy_gap(a, b) ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-13));
  // sweep: Klein inequality
  for (std::uint64_t s = 1; s <= 500; ++s) {
    const int n = 2 + static_cast<int>(s % 4);
    const cmat P = random_pd(n, 2 * s);
    const cmat Q = random_pd(n, 2 * s + 1);
    CHECK(relative_entropy_gap(P, Q) >= -1e-10);
  }
}

TEST_CASE("optimize_F pins phi and keeps one-sidedness") {
  Rng rng(55);
  for (std::uint64_t s = 1; s <= 8; ++s) {
    const double p = (s % 2 == 0) ? 1.4 : 0.6;
    const double q = (s % 3 == 0) ? -0.7 : 0.8;
    TraceFunctionSpec spec;
    spec.p = p;
    spec.q = q;
    spec.H = random_contraction(2, 70 + s);
    spec.L = random_signed(2, p > 1.0 ? 1 : -1, 80 + s);
    const cmat A = random_pd(2, 90 + s);
    const auto res = optimize_F(spec, A, 6, 30, s);
    const double beta = beta_of(p, q);
    CHECK(res.direction == (beta <= 2.0 ? OptimizeDirection::sup : OptimizeDirection::inf));
    CHECK(res.bound_violation <= 1e-6);
    CHECK(std::abs(res.best_found - res.analytic_value) <=
          1e-6 * (1.0 + std::abs(res.analytic_value)));
  }
}

TEST_CASE("partial minimization over a fixed grid stays concave") {
  // p = 1.8, q = 0.4 puts beta = 3: the inf branch of a concave cell, so
  // min over a fixed finite X-grid of F(X, .) is concave exactly
  TraceFunctionSpec spec;
  spec.p = 1.8;
  spec.q = 0.4;
  spec.H = random_contraction(2, 201);
  spec.L = random_signed(2, 1, 202);

  std::vector<cmat> grid;
  for (std::uint64_t s = 1; s <= 6; ++s) grid.push_back(random_pd(2, 300 + s));
  auto g = [&](const cmat& A) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& X : grid) best = std::min(best, F_of(X, A, spec));
    return best;
  };
  for (std::uint64_t t = 1; t <= 50; ++t) {
    const cmat A1 = random_pd(2, 400 + 2 * t);
    const cmat A2 = random_pd(2, 401 + 2 * t);
    const double mid = g(0.5 * (A1 + A2));
    const double avg = 0.5 * (g(A1) + g(A2));
    CHECK(mid >= avg - 1e-9 * (1.0 + std::abs(mid) + std::abs(avg)));
  }
}
