#pragma once

#include <string>
#include <vector>

#include <conelp/certificate.hpp>
#include <conelp/cone_projection.hpp>
#include <conelp/lp_problem.hpp>

namespace conelp {

// Geometric escalation of the shift parameter theta.
struct ThetaPolicy {
  double theta0 = 1.0;
  double growth = 4.0;
  int max_rounds = 12;
  double stability_tol = 1e-7;

  // theta0 = max(1, |b| / (1 + |c|)), growth 4, 12 rounds, tolerance 1e-7.
  static ThetaPolicy automatic(const LpProblem& prob);
  static ThetaPolicy fixed(double theta);

  void validate() const;
};

enum class LpStatus { Optimal, ThetaUnstable, Infeasible, NumericalFailure };

const char* to_string(LpStatus status);

struct ConicData {
  GeneratorSet generators;
  Vector point;    // (0, ..., 0, 1)
  Vector shift;    // x^c = x0 - theta c
  Vector shifted_rhs;  // b^c = b - A x^c
  double scale = 1.0;
};

// Builds the cone whose projection problem encodes min c x over A x <= b for
// the given shift: generator rows (a_i, -b^c_i / scale). A scale s > 1
// measures the shifted least-norm point in units of s, which keeps the
// normalization coordinate of the residual away from zero for large theta.
ConicData prepare_conic(const LpProblem& prob, double theta, const Vector& x0,
                        double scale = 1.0);

// x* = scale * r_x / r_xi + x0 - theta c, where r = p - z* is the projection
// residual. Throws DegenerateRecovery when r_xi <= tol.
Vector recover_solution(const ConeProjectionResult& proj, double theta, const Vector& x0,
                        const Vector& c, double scale = 1.0, double tol = 1e-9);

struct RoundInfo {
  double theta = 0.0;
  double change = 0.0;          // relative change of x* vs the previous round
  std::size_t iterations = 0;   // cone projection iterations
  std::size_t basis_size = 0;
  bool certified = false;
};

struct LpSolution {
  Vector x_star;
  double objective = 0.0;
  double theta_used = 0.0;
  Vector dual_u;   // u <= 0, u A = c at optimality
  LpStatus status = LpStatus::NumericalFailure;
  std::string message;
  int rounds = 0;
  CertificateReport certificate;
  std::vector<RoundInfo> history;
  ConeProjectionResult diagnostics;  // projection of the last round
  // Active-set sizes and factorization update times of every projection
  // iteration, concatenated over rounds.
  std::vector<std::size_t> basis_trace;
  std::vector<double> update_times;
};

struct SolveOptions {
  ProjectionOptions projection;
  double certificate_tol = 1e-6;
  double recovery_tol = 1e-9;
  // Re-solve the active constraints of the recovered point exactly and fit
  // dual multipliers on the tight constraints.
  bool polish = true;
};

LpSolution solve(const LpProblem& prob, const ThetaPolicy& policy, const Vector& x0,
                 const SolveOptions& opts = {});
LpSolution solve(const LpProblem& prob);

// One projection at a fixed theta; no escalation.
LpSolution solve_at_theta(const LpProblem& prob, double theta, const Vector& x0,
                          const SolveOptions& opts = {});

// c . Proj(x0 - tau c | X), nonincreasing in tau and equal to min c x once
// tau is large enough.
double support_estimate(const LpProblem& prob, double tau, const Vector& x0,
                        const ProjectionOptions& opts = {});

// Projection of q onto {x : A x <= b} through the least-norm point of the
// shifted polyhedron.
Vector project_onto_polyhedron(const Matrix& a, const Vector& b, const Vector& q,
                               const ProjectionOptions& opts = {});

}  // namespace conelp
