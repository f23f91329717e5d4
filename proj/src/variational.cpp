#include "dtf/variational.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dtf/deformed.hpp"
#include "dtf/rng.hpp"

namespace dtf {

namespace {

cmat hermitize(const cmat& A) { return 0.5 * (A + A.adjoint()); }

// real coordinates of a Hermitian matrix: diagonal, then (re, im) per i < j
Eigen::VectorXd params_from_hermitian(const cmat& S) {
  const int n = static_cast<int>(S.rows());
  Eigen::VectorXd v(n * n);
  int k = 0;
  for (int i = 0; i < n; ++i) v(k++) = S(i, i).real();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v(k++) = S(i, j).real();
      v(k++) = S(i, j).imag();
    }
  return v;
}

cmat hermitian_from_params(const Eigen::VectorXd& v, int n) {
  cmat S(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) S(i, i) = v(k++);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double re = v(k++);
      const double im = v(k++);
      S(i, j) = cdouble(re, im);
      S(j, i) = cdouble(re, -im);
    }
  return S;
}

cmat matrix_exp(const cmat& S) { return matrix_exp_p(S, 1.0); }
cmat matrix_log(const cmat& X) { return matrix_log_p(X, 1.0); }

struct Tracker {
  bool maximize = true;
  double analytic = 0.0;
  double best = 0.0;
  cmat best_X;
  double bound_violation = 0.0;

  void record(double value, const cmat& X) {
    const double excess =
        (maximize ? value - analytic : analytic - value) / (1.0 + std::abs(analytic));
    if (excess > bound_violation) bound_violation = excess;
    const bool better = maximize ? value > best : value < best;
    if (better) {
      best = value;
      best_X = X;
    }
  }
};

// fixed-step gradient ascent/descent with backtracking halving over the
// chart X = exp(S)
VariationalResult run_optimizer(const std::function<double(const cmat&)>& objective,
                                const cmat& Y, double analytic, bool maximize,
                                int restarts, int steps, std::uint64_t seed) {
  if (restarts < 1 || steps < 0) {
    throw std::invalid_argument("optimizer: restarts must be >= 1 and steps >= 0");
  }
  const int n = static_cast<int>(Y.rows());
  const int dim = n * n;

  Tracker track;
  track.maximize = maximize;
  track.analytic = analytic;
  track.best = maximize ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
  track.best_X = Y;

  auto eval = [&](const Eigen::VectorXd& v) {
    const cmat X = matrix_exp(hermitian_from_params(v, n));
    const double val = objective(X);
    track.record(val, X);
    return val;
  };

  long iterations = 0;
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd v;
    if (r == 0) {
      // the known optimum is always one start; evaluate at X = Y exactly
      track.record(objective(Y), Y);
      v = params_from_hermitian(matrix_log(Y));
    } else {
      cmat S = random_hermitian(n, mix_seed(seed, static_cast<std::uint64_t>(r)));
      const double norm = S.norm();
      if (norm > 0.0) {
        Rng rng(mix_seed(seed, 0x1000 + static_cast<std::uint64_t>(r)));
        S *= rng.uniform(0.1, 2.0) / norm;  // |S|_F <= 2
      }
      v = params_from_hermitian(S);
    }

    double cur = eval(v);
    for (int it = 0; it < steps; ++it) {
      const double h = 1e-5 * (1.0 + v.norm());
      Eigen::VectorXd grad(dim);
      for (int k = 0; k < dim; ++k) {
        Eigen::VectorXd vp = v, vm = v;
        vp(k) += h;
        vm(k) -= h;
        grad(k) = (eval(vp) - eval(vm)) / (2.0 * h);
      }
      const double gn = grad.norm();
      if (gn < 1e-14) break;
      Eigen::VectorXd dir = grad / gn;
      if (!maximize) dir = -dir;

      double step = 0.25;
      bool accepted = false;
      while (step > 1e-12) {
        const Eigen::VectorXd cand = v + step * dir;
        double val;
        try {
          val = eval(cand);
        } catch (const std::exception&) {
          step *= 0.5;  // left the numeric range; shrink
          continue;
        }
        const bool better = maximize ? val > cur : val < cur;
        if (better) {
          v = cand;
          cur = val;
          accepted = true;
          ++iterations;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;  // no improving step at any scale
    }
  }

  VariationalResult out;
  out.analytic_value = analytic;
  out.best_found = track.best;
  out.optimizer_distance = (track.best_X - Y).norm();
  out.bound_violation = track.bound_violation;
  out.iterations = iterations;
  out.direction = maximize ? OptimizeDirection::sup : OptimizeDirection::inf;
  return out;
}

}  // namespace

double trace_variation_objective(const cmat& X, const cmat& Y, double q) {
  require_hermitian(X, "trace_variation_objective X");
  require_hermitian(Y, "trace_variation_objective Y");
  const SpectralDecomposition dx = eigh(X);
  const int n = static_cast<int>(dx.eigenvalues.size());
  rvec xp(n), xl(n);
  for (int i = 0; i < n; ++i) {
    xl(i) = log_p(dx.eigenvalues(i), q);  // enforces X > 0
    xp(i) = std::pow(dx.eigenvalues(i), 2.0 - q);
  }
  const cmat X2q = hermitize(dx.eigenvectors * xp.asDiagonal() * dx.eigenvectors.adjoint());
  const cmat logX = dx.eigenvectors * xl.asDiagonal() * dx.eigenvectors.adjoint();
  const cmat diff = hermitize(logX - matrix_log_p(Y, q));
  return X.trace().real() - real_trace_product(X2q, diff);
}

VariationalResult verify_trace_variation(const cmat& Y, double q, int restarts,
                                         int steps, std::uint64_t seed) {
  require_hermitian(Y, "verify_trace_variation");
  const double analytic = Y.trace().real();
  const bool maximize = q <= 2.0;
  auto objective = [&Y, q](const cmat& X) { return trace_variation_objective(X, Y, q); };
  return run_optimizer(objective, Y, analytic, maximize, restarts, steps, seed);
}

double relative_entropy_gap(const cmat& X, const cmat& Y) {
  require_hermitian(X, "relative_entropy_gap X");
  require_hermitian(Y, "relative_entropy_gap Y");
  const cmat diff = hermitize(matrix_log(X) - matrix_log(Y));
  const double rel = real_trace_product(X, diff);
  return rel - (X.trace().real() - Y.trace().real());
}

VariationalResult optimize_F(const TraceFunctionSpec& spec, const cmat& A, int restarts,
                             int steps, std::uint64_t seed) {
  spec.validate();
  const double beta = beta_of(spec.p, spec.q);
  const double analytic = phi_direct(spec, A);
  const bool maximize = beta <= 2.0;
  // Y is fixed by (spec, A); precompute it once for the whole run
  const cmat Y = variational_point(spec, A);
  const cmat logY = matrix_log_p(Y, beta);
  auto objective = [&, beta](const cmat& X) {
    const SpectralDecomposition dx = eigh(X);
    const int n = static_cast<int>(dx.eigenvalues.size());
    rvec xp(n), xl(n);
    for (int i = 0; i < n; ++i) {
      xl(i) = log_p(dx.eigenvalues(i), beta);
      xp(i) = std::pow(dx.eigenvalues(i), 2.0 - beta);
    }
    const cmat X2b = hermitize(dx.eigenvectors * xp.asDiagonal() * dx.eigenvectors.adjoint());
    const cmat logX = dx.eigenvectors * xl.asDiagonal() * dx.eigenvectors.adjoint();
    return X.trace().real() - real_trace_product(X2b, hermitize(logX - logY));
  };
  return run_optimizer(objective, Y, analytic, maximize, restarts, steps, seed);
}

}  // namespace dtf
