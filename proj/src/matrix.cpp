#include "dtf/matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dtf/deformed.hpp"
#include "dtf/rng.hpp"

namespace dtf {

namespace {

void require_square(const cmat& A, const char* what) {
  if (A.rows() != A.cols() || A.rows() < 1) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << A.rows() << "x" << A.cols();
    throw std::invalid_argument(os.str());
  }
  if (!A.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
  }
}

// exact symmetrization; kills the roundoff asymmetry of reconstructions
cmat hermitize(const cmat& A) { return 0.5 * (A + A.adjoint()); }

cmat random_gaussian(int n, Rng& rng, double entry_scale) {
  cmat G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = entry_scale * rng.cgaussian();
  return G;
}

// Haar-ish unitary from the QR of a Gaussian matrix
cmat random_unitary(int n, Rng& rng) {
  const cmat G = random_gaussian(n, rng, 1.0);
  Eigen::HouseholderQR<cmat> qr(G);
  cmat Q = qr.householderQ();
  return Q;
}

}  // namespace

bool is_hermitian(const cmat& A) {
  if (A.rows() != A.cols() || !A.allFinite()) return false;
  const double scale = 1.0 + A.cwiseAbs().maxCoeff();
  return (A - A.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

void require_hermitian(const cmat& A, const char* what) {
  require_square(A, what);
  if (!is_hermitian(A)) {
    throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
  }
}

double operator_norm(const cmat& M) {
  require_square(M, "operator_norm");
  const cmat S = M.adjoint() * M;
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(S), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double min_eigenvalue(const cmat& A) {
  require_hermitian(A, "min_eigenvalue");
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(A), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

SpectralDecomposition eigh(const cmat& A) {
  require_hermitian(A, "eigh");
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(A));
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigh: eigensolver failed to converge (n = " << A.rows()
       << ", max|entry| = " << A.cwiseAbs().maxCoeff() << ")";
    throw std::runtime_error(os.str());
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

cmat apply_scalar(const std::function<double(double)>& f, const cmat& A) {
  const SpectralDecomposition d = eigh(A);
  const int n = static_cast<int>(d.eigenvalues.size());
  rvec fx(n);
  for (int i = 0; i < n; ++i) {
    try {
      fx(i) = f(d.eigenvalues(i));
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << e.what() << " (eigenvalue " << i << " = " << d.eigenvalues(i) << ")";
      throw std::domain_error(os.str());
    }
  }
  return hermitize(d.eigenvectors * fx.asDiagonal() * d.eigenvectors.adjoint());
}

namespace {

// shared power rule: zero-floor convention on eigenvalue w
double pow_with_floor(double w, double e, double floor) {
  if (w > floor) return std::pow(w, e);
  if (w >= -floor) {
    if (e > 0.0) return 0.0;
    std::ostringstream os;
    os << "matrix power: zero eigenvalue (" << w << ") with exponent " << e << " <= 0";
    throw std::domain_error(os.str());
  }
  std::ostringstream os;
  os << "matrix power: negative eigenvalue " << w << " below the zero floor";
  throw std::domain_error(os.str());
}

}  // namespace

cmat matrix_pow(const cmat& A, double e) {
  const SpectralDecomposition d = eigh(A);
  const double floor = kEigenvalueFloor * d.eigenvalues.cwiseAbs().maxCoeff();
  const int n = static_cast<int>(d.eigenvalues.size());
  rvec fx(n);
  for (int i = 0; i < n; ++i) fx(i) = pow_with_floor(d.eigenvalues(i), e, floor);
  return hermitize(d.eigenvectors * fx.asDiagonal() * d.eigenvectors.adjoint());
}

double trace_pow(const cmat& A, double e) {
  const SpectralDecomposition d = eigh(A);
  const double floor = kEigenvalueFloor * d.eigenvalues.cwiseAbs().maxCoeff();
  double sum = 0.0;
  for (int i = 0; i < d.eigenvalues.size(); ++i) {
    sum += pow_with_floor(d.eigenvalues(i), e, floor);
  }
  return sum;
}

cmat matrix_log_p(const cmat& A, double p) {
  return apply_scalar([p](double x) { return log_p(x, p); }, A);
}

cmat matrix_exp_p(const cmat& M, double p) {
  const SpectralDecomposition d = eigh(M);
  std::ostringstream bad;
  int nbad = 0;
  for (int i = 0; i < d.eigenvalues.size(); ++i) {
    if (!in_exp_domain(d.eigenvalues(i), p)) {
      bad << (nbad++ ? ", " : "") << d.eigenvalues(i);
    }
  }
  if (nbad > 0) {
    std::ostringstream os;
    os << "matrix_exp_p: " << nbad << " eigenvalue(s) outside the exp_p range for p = "
       << p << ": [" << bad.str() << "]";
    throw std::domain_error(os.str());
  }
  const int n = static_cast<int>(d.eigenvalues.size());
  rvec fx(n);
  for (int i = 0; i < n; ++i) fx(i) = exp_p(d.eigenvalues(i), p);
  return hermitize(d.eigenvectors * fx.asDiagonal() * d.eigenvectors.adjoint());
}

cmat random_pd(int n, std::uint64_t seed, double spread) {
  if (n < 1) throw std::invalid_argument("random_pd: n must be >= 1");
  if (!(spread >= 1.0)) throw std::invalid_argument("random_pd: spread must be >= 1");
  Rng rng(mix_seed(seed, 0x9d));
  const double l = std::log(spread);
  rvec ev(n);
  for (int i = 0; i < n; ++i) ev(i) = std::exp(rng.uniform(-l, l));
  const cmat U = random_unitary(n, rng);
  return hermitize(U * ev.asDiagonal() * U.adjoint());
}

cmat random_contraction(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_contraction: n must be >= 1");
  Rng rng(mix_seed(seed, 0xc0));
  // entries ~ CN(0, 1/n): singular values straddle 1, so the clamp hits
  // the boundary ||H|| = 1 with positive probability but not always
  const cmat G = random_gaussian(n, rng, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::JacobiSVD<cmat> svd(G, Eigen::ComputeFullU | Eigen::ComputeFullV);
  rvec sv = svd.singularValues();
  for (int i = 0; i < n; ++i) sv(i) = std::min(sv(i), 1.0);
  return svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
}

cmat random_signed(int n, int sign, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_signed: n must be >= 1");
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("random_signed: sign must be +1 or -1");
  }
  Rng rng(mix_seed(seed, 0x51));
  const cmat G = random_gaussian(n, rng, 1.0 / std::sqrt(static_cast<double>(n)));
  return hermitize(static_cast<double>(sign) * (G * G.adjoint()));
}

cmat random_hermitian(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_hermitian: n must be >= 1");
  Rng rng(mix_seed(seed, 0x4e));
  const cmat G = random_gaussian(n, rng, 1.0);
  return hermitize(G);
}

cmat random_general(int n, std::uint64_t seed, double scale) {
  if (n < 1) throw std::invalid_argument("random_general: n must be >= 1");
  Rng rng(mix_seed(seed, 0x6e));
  return random_gaussian(n, rng, scale / std::sqrt(static_cast<double>(n)));
}

double real_trace_product(const cmat& P, const cmat& Q) {
  if (P.rows() != Q.cols() || P.cols() != Q.rows()) {
    throw std::invalid_argument("real_trace_product: incompatible shapes");
  }
  const cdouble t = P.cwiseProduct(Q.transpose()).sum();
  const double scale = 1.0 + std::abs(t.real());
  if (std::abs(t.imag()) > 1e-10 * scale) {
    std::ostringstream os;
    os << "real_trace_product: imaginary residue " << t.imag()
       << " exceeds 1e-10 * " << scale;
    throw std::runtime_error(os.str());
  }
  return t.real();
}

}  // namespace dtf
