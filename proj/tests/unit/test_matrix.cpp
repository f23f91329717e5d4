#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dtf/io.hpp"
#include "dtf/matrix.hpp"
#include "dtf/rng.hpp"

using namespace dtf;

namespace {

cmat diag2(double a, double b) {
  cmat A = cmat::Zero(2, 2);
  A(0, 0) = a;
  A(1, 1) = b;
  return A;
}

}  // namespace

TEST_CASE("eigh on fixed matrices") {
  const auto d = eigh(diag2(3.0, 1.0));
  CHECK(d.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(d.eigenvalues(1) == doctest::Approx(3.0));

  const auto id = eigh(cmat::Identity(4, 4));
  for (int i = 0; i < 4; ++i) CHECK(id.eigenvalues(i) == doctest::Approx(1.0));
}

TEST_CASE("eigh reconstruction and unitarity on random input") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const cmat A = random_pd(4, s);
    const auto d = eigh(A);
    const cmat R = d.eigenvectors * d.eigenvalues.asDiagonal() * d.eigenvectors.adjoint();
    CHECK((R - A).norm() / A.norm() < 1e-10);
    CHECK((d.eigenvectors.adjoint() * d.eigenvectors - cmat::Identity(4, 4)).norm() < 1e-10);
  }
}

TEST_CASE("eigh rejects non-Hermitian input") {
  cmat A = cmat::Zero(2, 2);
  A(0, 1) = 1.0;
  CHECK_THROWS_AS(eigh(A), std::invalid_argument);
}

TEST_CASE("apply_scalar fixed values") {
  const cmat sq = apply_scalar([](double t) { return t * t; }, diag2(1.0, 2.0));
  CHECK(sq(0, 0).real() == doctest::Approx(1.0));
  CHECK(sq(1, 1).real() == doctest::Approx(4.0));

  const cmat A = random_pd(3, 7);
  const cmat same = apply_scalar([](double t) { return t; }, A);
  CHECK((same - A).norm() < 1e-12 * A.norm());

  const cmat r = apply_scalar([](double t) { return std::pow(t, -0.5); }, diag2(4.0, 9.0));
  CHECK(r(0, 0).real() == doctest::Approx(0.5));
  CHECK(r(1, 1).real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("apply_scalar names the offending eigenvalue") {
  try {
    matrix_log_p(diag2(1.0, -2.0), 1.5);
    FAIL("expected a domain error");
  } catch (const std::domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("eigenvalue") != std::string::npos);
  }
}

TEST_CASE("composition property of apply_scalar") {
  Rng rng(5);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const cmat A = random_pd(3, s);
    auto f = [](double t) { return std::sqrt(t); };
    auto g = [](double t) { return t * t + 1.0; };
    const cmat left = apply_scalar([&](double t) { return f(g(t)); }, A);
    const cmat right = apply_scalar(f, apply_scalar(g, A));
    CHECK((left - right).norm() / left.norm() < 1e-9);
  }
}

TEST_CASE("matrix_exp_p and matrix_log_p") {
  const cmat Z = cmat::Zero(3, 3);
  CHECK((matrix_exp_p(Z, 1.7) - cmat::Identity(3, 3)).norm() < 1e-14);
  CHECK(matrix_log_p(cmat::Identity(3, 3), 0.4).norm() < 1e-14);

  for (std::uint64_t s = 1; s <= 15; ++s) {
    const cmat A = random_pd(4, s);
    for (double p : {0.3, 1.0, 1.8, 2.6}) {
      const cmat back = matrix_exp_p(matrix_log_p(A, p), p);
      CHECK((back - A).norm() / A.norm() < 1e-10);
    }
  }
}

TEST_CASE("matrix_exp_p reports out-of-range eigenvalues") {
  CHECK_THROWS_AS(matrix_exp_p(diag2(-2.0, 0.0), 2.0), std::domain_error);
}

TEST_CASE("functional calculus commutes with unitary conjugation") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const cmat A = random_pd(3, s);
    // unitary factor from a contraction's SVD would do; reuse eigh of a
    // random Hermitian matrix instead
    const cmat U = eigh(random_hermitian(3, s + 100)).eigenvectors;
    const cmat lhs = matrix_exp_p(U * matrix_log_p(A, 1.6) * U.adjoint(), 1.6);
    const cmat rhs = U * matrix_exp_p(matrix_log_p(A, 1.6), 1.6) * U.adjoint();
    CHECK((lhs - rhs).norm() / rhs.norm() < 1e-10);
  }
}

TEST_CASE("samplers are bit-identical for identical arguments") {
  const cmat A1 = random_pd(4, 1234, 50.0);
  const cmat A2 = random_pd(4, 1234, 50.0);
  CHECK(A1 == A2);  // exact equality, not a tolerance
  const cmat H1 = random_contraction(3, 99);
  const cmat H2 = random_contraction(3, 99);
  CHECK(H1 == H2);
  const cmat L1 = random_signed(3, -1, 7);
  const cmat L2 = random_signed(3, -1, 7);
  CHECK(L1 == L2);
  CHECK(random_pd(4, 1235) != random_pd(4, 1234));
}

TEST_CASE("random_contraction has operator norm <= 1") {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    for (int n : {1, 2, 3, 5}) {
      CHECK(operator_norm(random_contraction(n, s)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("random_signed respects the requested sign") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    CHECK(min_eigenvalue(random_signed(3, 1, s)) >= -1e-12);
    CHECK(min_eigenvalue(-random_signed(3, -1, s)) >= -1e-12);
  }
}

TEST_CASE("random_pd eigenvalue range tracks the spread") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const cmat A = random_pd(4, s, 100.0);
    const auto d = eigh(A);
    CHECK(d.eigenvalues.minCoeff() >= 1.0 / 100.0 - 1e-9);
    CHECK(d.eigenvalues.maxCoeff() <= 100.0 + 1e-9);
    const double cond = d.eigenvalues.maxCoeff() / d.eigenvalues.minCoeff();
    CHECK(cond <= 1e4 + 1.0);
  }
}

TEST_CASE("trace_pow and matrix_pow honor the zero floor") {
  // rank-deficient PSD base: 0^s = 0 for s > 0
  const cmat P = diag2(2.0, 0.0);
  CHECK(trace_pow(P, 0.5) == doctest::Approx(std::sqrt(2.0)));
  CHECK(matrix_pow(P, 2.0)(1, 1).real() == doctest::Approx(0.0));
  CHECK_THROWS_AS(trace_pow(P, -0.5), std::domain_error);
  CHECK_THROWS_AS(trace_pow(diag2(1.0, -1.0), 0.5), std::domain_error);
}

TEST_CASE("matrix JSON round trip") {
  Rng rng(17);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const cmat A = random_general(3, s, 2.0);
    const cmat B = matrix_from_json(matrix_to_json(A));
    CHECK(A == B);  // %.17g-free path: doubles stored natively by the JSON lib
  }
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json{{"n", 2}, {"re", {1.0}}, {"im", {0.0}}}),
                  std::invalid_argument);
}
