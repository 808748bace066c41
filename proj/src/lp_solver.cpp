#include <conelp/lp_solver.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <conelp/errors.hpp>
#include <conelp/least_norm.hpp>

namespace conelp {

ThetaPolicy ThetaPolicy::automatic(const LpProblem& prob) {
  ThetaPolicy policy;
  policy.theta0 = std::max(1.0, prob.b.norm() / (1.0 + prob.c.norm()));
  return policy;
}

ThetaPolicy ThetaPolicy::fixed(double theta) {
  ThetaPolicy policy;
  policy.theta0 = theta;
  policy.max_rounds = 1;
  return policy;
}

void ThetaPolicy::validate() const {
  if (!(theta0 > 0.0)) throw InvalidInput("ThetaPolicy: theta0 must be positive");
  if (!(growth > 1.0)) throw InvalidInput("ThetaPolicy: growth must exceed 1");
  if (max_rounds < 1) throw InvalidInput("ThetaPolicy: max_rounds must be >= 1");
  if (!(stability_tol >= 0.0)) throw InvalidInput("ThetaPolicy: negative stability_tol");
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::ThetaUnstable: return "ThetaUnstable";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

ConicData prepare_conic(const LpProblem& prob, double theta, const Vector& x0, double scale) {
  prob.validate();
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw InvalidInput("prepare_conic: theta must be finite and nonnegative");
  }
  if (!(scale > 0.0)) throw InvalidInput("prepare_conic: scale must be positive");
  if (x0.size() != prob.cols() || !x0.allFinite()) throw InvalidInput("prepare_conic: bad x0");

  Vector shift = x0 - theta * prob.c;
  Vector rhs = prob.b - prob.A * shift;
  const Index n = prob.cols();
  Matrix gens(prob.rows(), n + 1);
  gens.leftCols(n) = prob.A;
  gens.col(n) = -rhs / scale;
  return ConicData{GeneratorSet(std::move(gens)), Vector::Unit(n + 1, n), std::move(shift),
                   std::move(rhs), scale};
}

Vector recover_solution(const ConeProjectionResult& proj, double theta, const Vector& x0,
                        const Vector& c, double scale, double tol) {
  const Index n = x0.size();
  if (proj.residual.size() != n + 1 || c.size() != n) {
    throw InvalidInput("recover_solution: dimension mismatch");
  }
  const double r_xi = proj.residual(n);
  if (!(r_xi > tol)) {
    throw DegenerateRecovery("recover_solution: normalization coordinate of the residual vanished");
  }
  return scale * proj.residual.head(n) / r_xi + x0 - theta * c;
}

namespace {

double relative_change(const Vector& now, const Vector& before) {
  return (now - before).norm() / std::max(1.0, now.norm());
}

double feasibility_tol(const LpProblem& prob) { return 1e-8 * (1.0 + prob.b.norm()); }

// Projection of `shift` onto {A_S x = b_S}, the affine hull of the
// constraints holding the active cone generators.
std::optional<Vector> resolve_active(const LpProblem& prob, const std::vector<Index>& active,
                                     const Vector& shift) {
  if (active.empty()) return std::nullopt;
  const Index k = static_cast<Index>(active.size());
  Matrix a_s(k, prob.cols());
  Vector b_s(k);
  for (Index i = 0; i < k; ++i) {
    a_s.row(i) = prob.A.row(active[i]);
    b_s(i) = prob.b(active[i]);
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a_s);
  Vector x = shift + cod.solve(b_s - a_s * shift);
  if (!x.allFinite()) return std::nullopt;
  return x;
}

// Nonnegative multipliers on the constraints tight at x that best explain
// -c; returned in the u <= 0 convention.
Vector fit_dual(const LpProblem& prob, const Vector& x, const std::vector<Index>& hint,
                const ProjectionOptions& popts) {
  const Vector slack = prob.b - prob.A * x;
  const double xnorm = x.norm();
  std::vector<Index> tight;
  for (Index i = 0; i < prob.rows(); ++i) {
    const double tol = 1e-9 * (1.0 + std::abs(prob.b(i)) + prob.A.row(i).norm() * xnorm);
    if (slack(i) <= tol) tight.push_back(i);
  }
  Vector u = Vector::Zero(prob.rows());
  if (tight.empty() || prob.c.norm() == 0.0) return u;

  Matrix rows(static_cast<Index>(tight.size()), prob.cols());
  std::vector<Index> warm;
  for (std::size_t k = 0; k < tight.size(); ++k) {
    rows.row(static_cast<Index>(k)) = prob.A.row(tight[k]);
    if (std::binary_search(hint.begin(), hint.end(), tight[k])) {
      warm.push_back(static_cast<Index>(k));
    }
  }
  ProjectionOptions opts = popts;
  opts.warm_start = std::move(warm);
  const auto fit = project_onto_cone(GeneratorSet(std::move(rows)), -prob.c, opts);
  for (std::size_t k = 0; k < tight.size(); ++k) {
    u(tight[k]) = -fit.coeffs(static_cast<Index>(k));
  }
  return u;
}

struct Round {
  Vector x;
  Vector u;
  ConeProjectionResult proj;
  CertificateReport cert;
  bool recovered = false;
  bool empty = false;
  std::string error;
};

Round run_round(const LpProblem& prob, double theta, const Vector& x0,
                const std::vector<Index>& warm, const SolveOptions& opts) {
  Round out;
  const double scale = std::max(1.0, theta * prob.c.norm());
  const ConicData conic = prepare_conic(prob, theta, x0, scale);
  ProjectionOptions popts = opts.projection;
  popts.warm_start = warm;
  out.proj = project_onto_cone(conic.generators, conic.point, popts);

  if (out.proj.residual.norm() <= opts.projection.kkt_tol) {
    out.empty = true;
    out.error = "homogenized cone contains the normalization direction: constraints are infeasible";
    return out;
  }
  try {
    out.x = recover_solution(out.proj, theta, x0, prob.c, scale, opts.recovery_tol);
    out.recovered = true;
  } catch (const DegenerateRecovery& e) {
    out.error = e.what();
    return out;
  }

  const Index n = prob.cols();
  if (opts.polish) {
    if (auto refined = resolve_active(prob, out.proj.active, conic.shift)) {
      const double tol = feasibility_tol(prob);
      const double before = std::max(0.0, (prob.A * out.x - prob.b).maxCoeff());
      const double after = std::max(0.0, (prob.A * *refined - prob.b).maxCoeff());
      if (after <= std::max(tol, before) &&
          (*refined - out.x).norm() <= 1e-6 * std::max(1.0, out.x.norm())) {
        out.x = std::move(*refined);
      }
    }
    out.u = fit_dual(prob, out.x, out.proj.active, opts.projection);
  } else {
    const double r_xi = out.proj.residual(n);
    const double factor = theta > 0.0 ? scale / (r_xi * theta) : 0.0;
    out.u = -factor * out.proj.coeffs;
  }
  out.cert = verify_certificate(prob, out.x, out.u, opts.certificate_tol);
  return out;
}

void append_trace(LpSolution& sol, const ConeProjectionResult& proj) {
  sol.basis_trace.insert(sol.basis_trace.end(), proj.basis_trace.begin(), proj.basis_trace.end());
  sol.update_times.insert(sol.update_times.end(), proj.update_times.begin(),
                          proj.update_times.end());
  sol.diagnostics = proj;
}

}  // namespace

LpSolution solve(const LpProblem& prob, const ThetaPolicy& policy, const Vector& x0,
                 const SolveOptions& opts) {
  prob.validate();
  policy.validate();
  if (x0.size() != prob.cols()) throw InvalidInput("solve: x0 has wrong length");

  LpSolution sol;
  sol.x_star = Vector::Zero(prob.cols());
  sol.dual_u = Vector::Zero(prob.rows());

  std::optional<Vector> previous;
  std::vector<Index> warm;
  int infeasible_rounds = 0;
  int degenerate_rounds = 0;
  double theta = policy.theta0;

  for (int round = 1; round <= policy.max_rounds; ++round, theta *= policy.growth) {
    Round out;
    try {
      out = run_round(prob, theta, x0, warm, opts);
    } catch (const NumericalBreakdown& e) {
      sol.status = LpStatus::NumericalFailure;
      sol.message = e.what();
      sol.rounds = round;
      return sol;
    }
    sol.rounds = round;
    append_trace(sol, out.proj);
    RoundInfo info;
    info.theta = theta;
    info.iterations = out.proj.iterations;
    info.basis_size = out.proj.active.size();

    if (out.empty) {
      sol.status = LpStatus::Infeasible;
      sol.message = out.error;
      sol.history.push_back(info);
      return sol;
    }
    if (!out.recovered) {
      ++degenerate_rounds;
      sol.history.push_back(info);
      sol.message = out.error;
      previous.reset();
      continue;
    }
    if (out.cert.primal_infeasibility > feasibility_tol(prob)) ++infeasible_rounds;

    info.certified = out.cert.passed();
    info.change = previous ? relative_change(out.x, *previous) : std::numeric_limits<double>::infinity();
    sol.history.push_back(info);

    sol.x_star = out.x;
    sol.dual_u = out.u;
    sol.objective = prob.c.dot(out.x);
    sol.theta_used = theta;
    sol.certificate = out.cert;
    warm = out.proj.active;

    if (previous && info.change <= policy.stability_tol && info.certified) {
      sol.status = LpStatus::Optimal;
      sol.message.clear();
      return sol;
    }
    previous = out.x;
  }

  if (degenerate_rounds == policy.max_rounds) {
    sol.status = LpStatus::NumericalFailure;
    sol.message = "recovery degenerate in every round (unbounded problem?): " + sol.message;
  } else if (infeasible_rounds == policy.max_rounds - degenerate_rounds) {
    sol.status = LpStatus::Infeasible;
    sol.message = "recovered point violates the constraints in every round";
  } else {
    sol.status = LpStatus::ThetaUnstable;
    sol.message = "optimizer did not stabilize over the theta schedule";
  }
  return sol;
}

LpSolution solve(const LpProblem& prob) {
  return solve(prob, ThetaPolicy::automatic(prob), Vector::Zero(prob.cols()));
}

LpSolution solve_at_theta(const LpProblem& prob, double theta, const Vector& x0,
                          const SolveOptions& opts) {
  prob.validate();
  if (!(theta > 0.0)) throw InvalidInput("solve_at_theta: theta must be positive");
  LpSolution sol;
  sol.rounds = 1;
  sol.theta_used = theta;
  Round out = run_round(prob, theta, x0, {}, opts);
  append_trace(sol, out.proj);
  if (out.empty) {
    sol.status = LpStatus::Infeasible;
    sol.message = out.error;
    return sol;
  }
  if (!out.recovered) {
    sol.status = LpStatus::NumericalFailure;
    sol.message = out.error;
    return sol;
  }
  sol.x_star = out.x;
  sol.dual_u = out.u;
  sol.objective = prob.c.dot(out.x);
  sol.certificate = out.cert;
  sol.status = out.cert.passed() ? LpStatus::Optimal : LpStatus::ThetaUnstable;
  return sol;
}

Vector project_onto_polyhedron(const Matrix& a, const Vector& b, const Vector& q,
                               const ProjectionOptions& opts) {
  if (q.size() != a.cols()) throw InvalidInput("project_onto_polyhedron: dimension mismatch");
  const double scale = std::max(1.0, q.norm());
  const Vector shifted = (b - a * q) / scale;
  const LeastNormResult ln = least_norm_point(a, shifted, opts);
  return q + scale * ln.x_star;
}

double support_estimate(const LpProblem& prob, double tau, const Vector& x0,
                        const ProjectionOptions& opts) {
  prob.validate();
  if (!(tau >= 0.0)) throw InvalidInput("support_estimate: tau must be nonnegative");
  return prob.c.dot(project_onto_polyhedron(prob.A, prob.b, x0 - tau * prob.c, opts));
}

}  // namespace conelp
