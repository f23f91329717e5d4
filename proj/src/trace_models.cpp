#include "dtf/trace_models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dtf/deformed.hpp"

namespace dtf {

namespace {

constexpr double kSignTol = 1e-10;  // eigenvalue tolerance for the L/K sign checks

bool near_one(double p) { return std::abs(p - 1.0) < kDeformSwitch; }

void require_same_dim(const cmat& A, const cmat& B, const char* what) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << A.rows() << "x" << A.cols() << " vs "
       << B.rows() << "x" << B.cols() << ")";
    throw std::invalid_argument(os.str());
  }
}

cmat hermitize(const cmat& A) { return 0.5 * (A + A.adjoint()); }

// L + H* log_p(A) H, the exp_p argument of the direct form
cmat inner_argument(const TraceFunctionSpec& spec, const cmat& A) {
  const cmat lg = matrix_log_p(A, spec.p);
  return hermitize(spec.L + spec.H.adjoint() * lg * spec.H);
}

}  // namespace

void TraceFunctionSpec::validate() const {
  if (!std::isfinite(p) || !std::isfinite(q)) {
    throw std::invalid_argument("TraceFunctionSpec: p and q must be finite");
  }
  require_same_dim(H, L, "TraceFunctionSpec");
  require_hermitian(L, "TraceFunctionSpec L");
  const double hnorm = operator_norm(H);
  if (hnorm > 1.0 + 1e-10) {
    std::ostringstream os;
    os << "TraceFunctionSpec: H is not a contraction (|H| = " << hnorm << ")";
    throw std::invalid_argument(os.str());
  }
  const double lmax = L.cwiseAbs().maxCoeff();
  if (near_one(p)) {
    if (lmax > 1e-12) {
      throw std::invalid_argument("TraceFunctionSpec: L must be 0 when p = 1");
    }
    return;
  }
  const double tol = kSignTol * (1.0 + lmax);
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(L), Eigen::EigenvaluesOnly);
  if (p > 1.0 && es.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("TraceFunctionSpec: L must be >= 0 when p > 1");
  }
  if (p < 1.0 && es.eigenvalues().maxCoeff() > tol) {
    throw std::invalid_argument("TraceFunctionSpec: L must be <= 0 when p < 1");
  }
}

void UpsilonSpec::validate() const {
  if (!std::isfinite(p) || !std::isfinite(s)) {
    throw std::invalid_argument("UpsilonSpec: p and s must be finite");
  }
  require_same_dim(H, K, "UpsilonSpec");
  require_hermitian(K, "UpsilonSpec K");
  const double tol = kSignTol * (1.0 + K.cwiseAbs().maxCoeff());
  if (min_eigenvalue(K) < -tol) {
    throw std::invalid_argument("UpsilonSpec: K must be positive semidefinite");
  }
  if (!H.allFinite()) throw std::invalid_argument("UpsilonSpec: H has non-finite entries");
}

double phi_direct(const TraceFunctionSpec& spec, const cmat& A) {
  spec.validate();
  require_same_dim(spec.H, A, "phi_direct");
  const SpectralDecomposition d = eigh(inner_argument(spec, A));
  double sum = 0.0;
  for (int i = 0; i < d.eigenvalues.size(); ++i) {
    const double x = d.eigenvalues(i);
    if (!in_exp_domain(x, spec.p)) {
      std::ostringstream os;
      os << "phi_direct: inner eigenvalue " << x << " outside the exp_p range for p = "
         << spec.p << "; this signals an invariant bug, not a user error";
      throw std::domain_error(os.str());
    }
    sum += std::pow(exp_p(x, spec.p), spec.q);
  }
  return sum;
}

double phi_algebraic(const TraceFunctionSpec& spec, const cmat& A) {
  spec.validate();
  require_same_dim(spec.H, A, "phi_algebraic");
  if (near_one(spec.p)) {
    throw std::invalid_argument(
        "phi_algebraic: branch unavailable at p = 1 (use phi_direct)");
  }
  const double pm1 = spec.p - 1.0;
  const int n = static_cast<int>(A.rows());
  const cmat Ap = matrix_pow(A, pm1);
  const cmat base = hermitize(cmat::Identity(n, n) - spec.H.adjoint() * spec.H +
                              pm1 * spec.L + spec.H.adjoint() * Ap * spec.H);
  return trace_pow(base, spec.q / pm1);
}

double phi_beta(const TraceFunctionSpec& spec, const cmat& A) {
  spec.validate();
  require_same_dim(spec.H, A, "phi_beta");
  if (spec.q == 0.0) {
    throw std::invalid_argument("phi_beta: q = 0 is not defined (phi is constant there)");
  }
  const double beta = beta_of(spec.p, spec.q);
  const cmat M = spec.q * inner_argument(spec, A);
  return matrix_exp_p(M, beta).trace().real();
}

double upsilon(const UpsilonSpec& spec, const cmat& A) {
  spec.validate();
  require_same_dim(spec.H, A, "upsilon");
  const cmat Ap = matrix_pow(A, spec.p);
  const cmat base = hermitize(spec.K + spec.H.adjoint() * Ap * spec.H);
  return trace_pow(base, spec.s);
}

double psi(const cmat& L, const cmat& H, double p, double s, const cmat& A) {
  const double tol = kSignTol * (1.0 + L.cwiseAbs().maxCoeff());
  require_hermitian(L, "psi L");
  if (min_eigenvalue(L) < -tol) {
    throw std::invalid_argument("psi: L must be positive semidefinite");
  }
  UpsilonSpec spec;
  spec.p = p;
  spec.s = s;
  spec.K = L;
  spec.H = H;
  return upsilon(spec, A);
}

BlockEmbedding block_embed(const cmat& L, const cmat& H, const cmat& A) {
  require_hermitian(L, "block_embed L");
  require_same_dim(L, H, "block_embed");
  require_same_dim(L, A, "block_embed");
  const double tol = kSignTol * (1.0 + L.cwiseAbs().maxCoeff());
  if (min_eigenvalue(L) < -tol) {
    throw std::invalid_argument("block_embed: L must be positive semidefinite");
  }
  const int n = static_cast<int>(L.rows());
  const cmat Lhalf = matrix_pow(L, 0.5);
  BlockEmbedding out;
  out.H_hat = cmat::Zero(2 * n, 2 * n);
  out.H_hat.topLeftCorner(n, n) = Lhalf;
  out.H_hat.bottomLeftCorner(n, n) = H;
  out.A_hat = cmat::Zero(2 * n, 2 * n);
  out.A_hat.topLeftCorner(n, n) = cmat::Identity(n, n);
  out.A_hat.bottomRightCorner(n, n) = A;
  return out;
}

cmat variational_point(const TraceFunctionSpec& spec, const cmat& A) {
  spec.validate();
  require_same_dim(spec.H, A, "variational_point");
  if (spec.q == 0.0) {
    throw std::invalid_argument("variational_point: q = 0 is not defined");
  }
  const double beta = beta_of(spec.p, spec.q);
  return matrix_exp_p(spec.q * inner_argument(spec, A), beta);
}

double F_of(const cmat& X, const cmat& A, const TraceFunctionSpec& spec) {
  const double beta = beta_of(spec.p, spec.q);
  const cmat Y = variational_point(spec, A);
  require_same_dim(X, Y, "F_of");
  const SpectralDecomposition dx = eigh(X);
  const int n = static_cast<int>(dx.eigenvalues.size());
  rvec xp(n), xl(n);
  for (int i = 0; i < n; ++i) {
    xl(i) = log_p(dx.eigenvalues(i), beta);  // throws when X is not positive definite
    xp(i) = std::pow(dx.eigenvalues(i), 2.0 - beta);
  }
  const cmat X2b = dx.eigenvectors * xp.asDiagonal() * dx.eigenvectors.adjoint();
  const cmat logX = dx.eigenvectors * xl.asDiagonal() * dx.eigenvectors.adjoint();
  const cmat diff = hermitize(logX - matrix_log_p(Y, beta));
  return X.trace().real() - real_trace_product(hermitize(X2b), diff);
}

double G_of(const cmat& X, const cmat& A, const TraceFunctionSpec& spec) {
  spec.validate();
  const double beta = beta_of(spec.p, spec.q);
  if (near_one(beta)) {
    throw std::invalid_argument("G_of: beta = 1 (p = 1) is not defined");
  }
  const int n = static_cast<int>(A.rows());
  const double pm1 = spec.p - 1.0;
  const cmat W = hermitize(cmat::Identity(n, n) - spec.H.adjoint() * spec.H +
                           pm1 * spec.L +
                           spec.H.adjoint() * matrix_pow(A, pm1) * spec.H);
  const cmat X2b = matrix_pow(X, 2.0 - beta);
  return real_trace_product(X2b, W) / (beta - 1.0);
}

double scaling_limit_defect(const TraceFunctionSpec& spec, const cmat& A, double t) {
  spec.validate();
  require_same_dim(spec.H, A, "scaling_limit_defect");
  if (!(t > 0.0)) throw std::invalid_argument("scaling_limit_defect: t must be > 0");
  if (near_one(spec.p)) {
    throw std::invalid_argument("scaling_limit_defect: p = 1 has no algebraic limit form");
  }
  // the limit needs H* A^(p-1) H positive definite, so H must be invertible
  Eigen::JacobiSVD<cmat> svd(spec.H);
  const rvec sv = svd.singularValues();
  if (sv.minCoeff() < 1e-6 * std::max(1.0, sv.maxCoeff())) {
    std::ostringstream os;
    os << "scaling_limit_defect: H is too close to singular (smallest singular value "
       << sv.minCoeff() << ")";
    throw std::runtime_error(os.str());
  }
  const cmat R = hermitize(spec.H.adjoint() * matrix_pow(A, spec.p - 1.0) * spec.H);
  const double limit = trace_pow(R, spec.q / (spec.p - 1.0));
  const double lhs = std::pow(t, -spec.q) * phi_direct(spec, t * A);
  return std::abs(lhs - limit);
}

}  // namespace dtf
