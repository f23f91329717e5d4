#pragma once

// Tracial Young inequalities:
//
//   Tr A^p B^(1-p) <= p Tr A + (1-p) Tr B      0 <= p <= 1
//   Tr A^p B^(1-p) >= p Tr A + (1-p) Tr B      p <= 0 or p >= 1
//
// young_defect returns the right-hand side minus the left-hand side, so the
// contract is defect >= -tol on [0,1] and defect <= tol outside.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtf/matrix.hpp"

namespace dtf {

double young_defect(const cmat& A, const cmat& B, double p);

struct YoungViolation {
  cmat A, B;
  double p = 0.0;
  double defect = 0.0;
  std::uint64_t trial = 0;
};

struct YoungCell {
  double p = 0.0;
  int dim = 0;
  int trials = 0;
  // worst normalized violation, max over trials of v/(TrA+TrB) where
  // v = -defect on the [0,1] branch and v = +defect outside
  double worst_defect = 0.0;
  bool pass = true;
};

struct YoungReport {
  std::uint64_t seed = 0;
  int trials = 0;
  double tol = 0.0;  // normalized violation tolerance
  std::vector<YoungCell> cells;
  double max_equal_pair_defect = 0.0;  // worst |defect| over A = B probes
  bool pass = true;
  std::optional<YoungViolation> certificate;
};

YoungReport run_young_suite(int trials, const std::vector<int>& dims,
                            const std::vector<double>& p_grid, std::uint64_t seed,
                            double tol = 1e-9, double spread = 10.0);

}  // namespace dtf
