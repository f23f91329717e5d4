#include "dtf/young.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "dtf/rng.hpp"

namespace dtf {

double young_defect(const cmat& A, const cmat& B, double p) {
  require_hermitian(A, "young_defect A");
  require_hermitian(B, "young_defect B");
  if (A.rows() != B.rows()) {
    throw std::invalid_argument("young_defect: dimension mismatch");
  }
  if (!std::isfinite(p)) throw std::invalid_argument("young_defect: p must be finite");
  const cmat Ap = matrix_pow(A, p);        // errors if A is not positive definite
  const cmat Bq = matrix_pow(B, 1.0 - p);
  const double cross = real_trace_product(Ap, Bq);
  return p * A.trace().real() + (1.0 - p) * B.trace().real() - cross;
}

YoungReport run_young_suite(int trials, const std::vector<int>& dims,
                            const std::vector<double>& p_grid, std::uint64_t seed,
                            double tol, double spread) {
  if (trials < 1 || dims.empty() || p_grid.empty()) {
    throw std::invalid_argument("run_young_suite: trials, dims and p_grid must be non-empty");
  }
  YoungReport report;
  report.seed = seed;
  report.trials = trials;
  report.tol = tol;

  std::map<std::pair<double, int>, YoungCell> cells;
  for (int t = 0; t < trials; ++t) {
    const int dim = dims[static_cast<std::size_t>(t) % dims.size()];
    const cmat A = random_pd(dim, mix_seed(seed, 2 * static_cast<std::uint64_t>(t)), spread);
    const cmat B = random_pd(dim, mix_seed(seed, 2 * static_cast<std::uint64_t>(t) + 1), spread);
    const double scale = A.trace().real() + B.trace().real();
    for (double p : p_grid) {
      const double defect = young_defect(A, B, p);
      const bool inner = p >= 0.0 && p <= 1.0;
      const double violation = (inner ? -defect : defect) / scale;
      YoungCell& cell = cells[{p, dim}];
      cell.p = p;
      cell.dim = dim;
      cell.trials += 1;
      if (cell.trials == 1 || violation > cell.worst_defect) cell.worst_defect = violation;
      if (violation > tol) {
        cell.pass = false;
        report.pass = false;
        if (!report.certificate) {
          report.certificate = YoungViolation{A, B, p, defect, static_cast<std::uint64_t>(t)};
        }
      }
      // equality case: the defect must vanish identically at A = B
      const double eq = std::abs(young_defect(A, A, p));
      if (eq > report.max_equal_pair_defect) report.max_equal_pair_defect = eq;
    }
  }
  for (const auto& [key, cell] : cells) report.cells.push_back(cell);
  return report;
}

}  // namespace dtf
