#pragma once

// Randomized convexity/concavity classification over parameter cells.
//
// A cell gets `trials` random instances; for each, the midpoint defect
// f((A1+A2)/2) - (f(A1)+f(A2))/2 is normalized by 1 + |f(A1)| + |f(A2)|.
// Convexity requires every normalized defect <= tol, concavity every
// defect >= -tol.  Cells with significant violations of both signs are
// "neither" (each must exceed neither_factor * tol); asymmetric or
// curvature-free evidence reads "indeterminate".  A five-direction second
// difference probe at step h cross-checks the sign profile.
//
// The classification tables for the deformed trace function (over (p, q),
// sign of L tied to p) and for upsilon (over (p, s), K >= 0) are exposed
// as expected_* so sweeps can flag contradictions.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dtf/matrix.hpp"

namespace dtf {

enum class Verdict { convex, concave, neither, indeterminate };
const char* to_string(Verdict v);

enum class ScanTarget { phi, upsilon };
const char* to_string(ScanTarget t);

struct ScanConfig {
  int trials = 200;
  std::vector<int> dims = {2, 3, 4};
  std::uint64_t seed = 0x00d7f5eed;
  double verdict_tol = 1e-8;     // relative midpoint tolerance
  double neither_factor = 100.0;
  double second_diff_step = 1e-2;
  int second_diff_directions = 5;
  double pd_spread = 10.0;
  double a_scale = 1.0;          // extra scale on sampled A's (scale-robustness probes)
  bool upsilon_random_K = false; // K = 0 when false, fresh random PSD per trial otherwise
  double boundary_inset = 1e-3;  // nudge off the critical parameter values
};

// worst-defect witness for a cell
struct CellInstance {
  cmat A1, A2, H, L;
  int dim = 0;
  double defect = 0.0;  // normalized
};

struct ConvexityVerdict {
  double p = 0.0;
  double q = 0.0;  // holds s for upsilon cells
  Verdict verdict = Verdict::indeterminate;
  double max_convexity_defect = 0.0;  // worst positive normalized midpoint defect
  double max_concavity_defect = 0.0;  // worst negative normalized midpoint defect (magnitude)
  double second_diff_min = 0.0;       // normalized second-difference extremes
  double second_diff_max = 0.0;
  double tol = 0.0;
  int trials = 0;
  std::string reason;  // set when indeterminate
  std::optional<CellInstance> worst;
};

struct GridSpec {
  double pmin = 0.0, pmax = 1.0;
  int psteps = 2;
  double qmin = 0.0, qmax = 1.0;
  int qsteps = 2;
};

struct RegionScanReport {
  GridSpec grid;
  ScanTarget target = ScanTarget::phi;
  ScanConfig config;
  std::vector<ConvexityVerdict> cells;  // p index outer, q index inner
};

double midpoint_defect(const std::function<double(const cmat&)>& f, const cmat& A1,
                       const cmat& A2);

/// f(A+hD) - 2 f(A) + f(A-hD); halves h until both endpoints are positive
/// definite (>= 0 for convex f).
double second_difference(const std::function<double(const cmat&)>& f, const cmat& A,
                         const cmat& D, double h);

ConvexityVerdict classify_cell(double p, double q, ScanTarget target,
                               const ScanConfig& cfg, std::uint64_t cell_seed);

RegionScanReport scan_region(const GridSpec& grid, ScanTarget target,
                             const ScanConfig& cfg);

// classification tables; nullopt outside every stated region
std::optional<Verdict> expected_phi_verdict(double p, double q);
std::optional<Verdict> expected_upsilon_verdict(double p, double s);

struct SymmetryReport {
  double q = 0.0;
  double p_source = 0.0;  // side with q/(1-p) > 0
  double p_mirror = 0.0;
  ConvexityVerdict source, mirror;
  bool agree = false;
};

/// Classifies (p, q, L sign by p) and the mirrored cell (2-p, q, -L) with
/// fresh samples and compares the verdicts.  p = 1 is its own mirror.
SymmetryReport symmetry_check(double p, double q, int trials, std::uint64_t seed);

// A 2x2 witness that Tr(L + H* A^p H)^s with s < 0 can lose midpoint
// convexity for some L >= 0 even where the L = 0 family shows none.
struct PsiCounterexample {
  double p = 0.0, s = 0.0;
  std::uint64_t seed = 0;
  long sample_index = -1;
  cmat H, L, A1, A2;
  double defect = 0.0;  // normalized midpoint defect of the L family
  double scale = 0.0;   // 1 + |f(A1)| + |f(A2)|
};

/// Randomized search; returns the first certificate that re-verifies, or
/// nullopt when the budget is exhausted (not an error).
std::optional<PsiCounterexample> counterexample_search(double p, double s, long budget,
                                                       std::uint64_t seed);

/// Recomputes the certificate's defect from its matrices; true when it still
/// exceeds the violation threshold and matches the recorded value to tol.
bool reverify_counterexample(const PsiCounterexample& cert, double tol = 1e-8);

}  // namespace dtf
