#pragma once

#include <string>

#include <conelp/lp_problem.hpp>

namespace conelp {

// Worst violation of each block of the primal-dual optimality system
//   A x <= b,  u A = c,  u <= 0,  c x = b u
// for min c x s.t. A x <= b (dual multipliers in the nonpositive convention).
// Weak duality already gives c x >= b u for any primal/dual feasible pair,
// so the gap block measures |c x - b u|.
struct CertificateReport {
  double primal_infeasibility = 0.0;  // max(0, max_i (A x - b)_i)
  double dual_residual = 0.0;         // max_j |(u A - c)_j|
  double dual_sign = 0.0;              // max(0, max_i u_i)
  double duality_gap = 0.0;            // |c x - b u|
  double tol = 0.0;

  double worst() const;
  bool passed() const { return worst() <= tol; }
  std::string summary() const;
};

CertificateReport verify_certificate(const LpProblem& prob, const Vector& x, const Vector& u,
                                     double tol);

}  // namespace conelp
