#include <doctest.h>

#include <cmath>

#include "dtf/io.hpp"
#include "dtf/rng.hpp"
#include "dtf/young.hpp"

using namespace dtf;

namespace {

cmat diag1(double a) {
  cmat A(1, 1);
  A(0, 0) = a;
  return A;
}

}  // namespace

TEST_CASE("young_defect scalar oracles") {
  // 0.5*4 + 0.5*1 - 4^0.5 * 1^0.5 = 0.5
  CHECK(young_defect(diag1(4.0), diag1(1.0), 0.5) == doctest::Approx(0.5).epsilon(1e-13));
  // reversed branch: 2*4 - 1 - 16 = -9
  CHECK(young_defect(diag1(4.0), diag1(1.0), 2.0) == doctest::Approx(-9.0).epsilon(1e-13));
  // p in {0, 1} is identically zero
  const cmat A = random_pd(3, 5);
  const cmat B = random_pd(3, 6);
  CHECK(std::abs(young_defect(A, B, 0.0)) <= 1e-12 * (A.trace().real() + B.trace().real()));
  CHECK(std::abs(young_defect(A, B, 1.0)) <= 1e-12 * (A.trace().real() + B.trace().real()));
}

TEST_CASE("equality case A = B for every p") {
  const cmat A = random_pd(4, 9);
  for (double p : {-1.0, -0.3, 0.25, 0.5, 0.75, 1.5, 2.0}) {
    CHECK(std::abs(young_defect(A, A, p)) <= 1e-10);
  }
}

TEST_CASE("commuting pairs match the scalar sum oracle") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    // simultaneously diagonal pair in a common random basis
    const cmat U = eigh(random_hermitian(3, s)).eigenvectors;
    Rng rng(1000 + s);
    rvec a(3), b(3);
    for (int i = 0; i < 3; ++i) {
      a(i) = std::exp(rng.uniform(-1.5, 1.5));
      b(i) = std::exp(rng.uniform(-1.5, 1.5));
    }
    const cmat A = U * a.asDiagonal() * U.adjoint();
    const cmat B = U * b.asDiagonal() * U.adjoint();
    for (double p : {-0.5, 0.3, 0.8, 1.7}) {
      double oracle = 0.0;
      for (int i = 0; i < 3; ++i) {
        oracle += p * a(i) + (1.0 - p) * b(i) - std::pow(a(i), p) * std::pow(b(i), 1.0 - p);
      }
      CHECK(young_defect(0.5 * (A + A.adjoint()), 0.5 * (B + B.adjoint()), p) ==
            doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("branch signs hold on random non-commuting pairs") {
  const double ps[] = {-1.0, -0.5, 0.25, 0.5, 0.75, 1.5, 2.0};
  for (std::uint64_t t = 1; t <= 500; ++t) {
    const int n = 2 + static_cast<int>(t % 4);
    const cmat A = random_pd(n, 2 * t);
    const cmat B = random_pd(n, 2 * t + 1);
    const double tol = 1e-9 * (A.trace().real() + B.trace().real());
    for (double p : ps) {
      const double d = young_defect(A, B, p);
      if (p >= 0.0 && p <= 1.0) {
        CHECK(d >= -tol);
      } else {
        CHECK(d <= tol);
      }
    }
  }
}

TEST_CASE("homogeneity in the pair") {
  for (std::uint64_t t = 1; t <= 25; ++t) {
    const cmat A = random_pd(3, 3 * t);
    const cmat B = random_pd(3, 3 * t + 1);
    Rng rng(4000 + t);
    const double c = std::exp(rng.uniform(-2.0, 2.0));
    for (double p : {-0.5, 0.3, 1.5}) {
      const double lhs = young_defect(c * A, c * B, p);
      const double rhs = c * young_defect(A, B, p);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("suite report and CSV") {
  const std::vector<int> dims = {2, 3};
  const std::vector<double> grid = {0.0, 0.5, 1.0, 2.0};
  const auto report = run_young_suite(40, dims, grid, 123);
  CHECK(report.pass);
  CHECK(report.max_equal_pair_defect <= 1e-10);
  CHECK(report.cells.size() == grid.size() * dims.size());
  for (const auto& c : report.cells) CHECK(c.worst_defect <= report.tol);

  const std::string csv = young_report_to_csv(report);
  CHECK(csv.find("p,dim,trials,worst_defect,verdict") == 0);
  // deterministic: same seed, same bytes
  const auto rerun = run_young_suite(40, dims, grid, 123);
  CHECK(young_report_to_csv(rerun) == csv);
  CHECK(young_report_to_json(rerun).dump(2) == young_report_to_json(report).dump(2));
}
