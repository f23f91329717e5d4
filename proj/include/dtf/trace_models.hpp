#pragma once

// The deformed trace functions.
//
//   phi(A)     = Tr[ exp_p(L + H* log_p(A) H)^q ]                (direct)
//              = Tr[ I - H*H + (p-1)L + H* A^(p-1) H ]^(q/(p-1)) (algebraic, p != 1)
//              = Tr exp_b( qL + q H* log_p(A) H ),  b = 1+(p-1)/q (beta route)
//
//   upsilon(A) = Tr( K + H* A^p H )^s,   K >= 0, H arbitrary
//   psi(A)     = Tr( L + H* A^p H )^s,   L >= 0  (same shape as upsilon)
//
// plus the block embedding that removes L from psi, the variational
// functional F and its reduced form G, and the large/small-t scaling limit
// that connects phi to upsilon.
//
// For phi, H must be a contraction and the sign of L is tied to p
// (L >= 0 for p > 1, L <= 0 for p < 1, L = 0 at p = 1); this is exactly
// what keeps the exp_p argument inside its admissible range for every
// positive definite A.

#include "dtf/matrix.hpp"

namespace dtf {

struct TraceFunctionSpec {
  double p = 2.0;
  double q = 1.0;
  cmat H;
  cmat L;

  /// Throws std::invalid_argument when the bundle violates its invariants.
  void validate() const;
};

struct UpsilonSpec {
  double p = 1.0;
  double s = 1.0;
  cmat K;  // positive semidefinite
  cmat H;  // arbitrary

  void validate() const;
};

double phi_direct(const TraceFunctionSpec& spec, const cmat& A);

/// Algebraic route; not defined at p = 1 (reports a branch-unavailable
/// error rather than taking a limit).
double phi_algebraic(const TraceFunctionSpec& spec, const cmat& A);

/// Beta route; requires q != 0.
double phi_beta(const TraceFunctionSpec& spec, const cmat& A);

double upsilon(const UpsilonSpec& spec, const cmat& A);
double psi(const cmat& L, const cmat& H, double p, double s, const cmat& A);

// psi_{L,H}(A) = psi_{0,H_hat}(A_hat) for every s > 0, with
// H_hat = [[L^(1/2), 0], [H, 0]] and A_hat = diag(I, A).
struct BlockEmbedding {
  cmat H_hat;
  cmat A_hat;
};
BlockEmbedding block_embed(const cmat& L, const cmat& H, const cmat& A);

/// Y = exp_b(qL + q H* log_p(A) H): the point where F(., A) attains phi(A).
cmat variational_point(const TraceFunctionSpec& spec, const cmat& A);

/// F(X, A) = Tr X - Tr X^(2-b) (log_b X - log_b Y) with Y as above.
double F_of(const cmat& X, const cmat& A, const TraceFunctionSpec& spec);

/// G(X, A) = (b-1)^-1 Tr[ X^(2-b) (I - H*H + (p-1)L + H* A^(p-1) H) ];
/// F = (1 - 1/(b-1)) Tr X + G.  Requires b != 1.
double G_of(const cmat& X, const cmat& A, const TraceFunctionSpec& spec);

/// | t^-q phi(tA) - Tr(H* A^(p-1) H)^(q/(p-1)) |.  Decreases to 0 as
/// t -> infinity for p > 1 and as t -> 0 for p < 1.  Requires H to be
/// well-conditioned so that H* A^(p-1) H stays positive definite.
double scaling_limit_defect(const TraceFunctionSpec& spec, const cmat& A, double t);

}  // namespace dtf
