#pragma once

// Dense Hermitian linear algebra at desk scale: eigendecomposition,
// functional calculus f(A) = U f(diag) U*, and seeded samplers for the
// matrix classes used throughout (positive definite, contraction, signed).
// All matrices are complex; real-symmetric inputs are just a special case.

#include <complex>
#include <cstdint>
#include <functional>
#include <Eigen/Dense>

namespace dtf {

using cdouble = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;

// Eigenvalues ascending, eigenvector columns unitary.
struct SpectralDecomposition {
  rvec eigenvalues;
  cmat eigenvectors;
};

// Relative floor below which an eigenvalue of a PSD base is treated as an
// exact zero (0^s := 0 for s > 0); anything below -floor is an error.
inline constexpr double kEigenvalueFloor = 1e-10;

bool is_hermitian(const cmat& A);
void require_hermitian(const cmat& A, const char* what);

/// Largest singular value.
double operator_norm(const cmat& M);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const cmat& A);

SpectralDecomposition eigh(const cmat& A);

/// U f(diag) U*.  A domain error thrown by f is rethrown naming the
/// offending eigenvalue.
cmat apply_scalar(const std::function<double(double)>& f, const cmat& A);

/// Fractional matrix power with the zero-eigenvalue convention above.
cmat matrix_pow(const cmat& A, double e);

/// Tr A^e through the eigenvalues, same convention as matrix_pow.
double trace_pow(const cmat& A, double e);

cmat matrix_log_p(const cmat& A, double p);  // A positive definite
cmat matrix_exp_p(const cmat& M, double p);  // eigenvalues must pass in_exp_domain

// Seeded samplers.  Deterministic: identical arguments give bit-identical
// matrices on every platform.
cmat random_pd(int n, std::uint64_t seed, double spread = 10.0);
cmat random_contraction(int n, std::uint64_t seed);
cmat random_signed(int n, int sign, std::uint64_t seed);
cmat random_hermitian(int n, std::uint64_t seed);
cmat random_general(int n, std::uint64_t seed, double scale = 1.0);

/// Re Tr(P Q), asserting the imaginary residue is below
/// 1e-10 * (1 + |Re|) as a linear-algebra health check.
double real_trace_product(const cmat& P, const cmat& Q);

}  // namespace dtf
