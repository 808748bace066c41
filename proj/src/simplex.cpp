#include <conelp/simplex.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <conelp/errors.hpp>
#include <conelp/rng.hpp>

namespace conelp {

const char* to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::Optimal: return "Optimal";
    case OracleStatus::Infeasible: return "Infeasible";
    case OracleStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

namespace {

// Row-major tableau with the objective (reduced costs) in the last row and
// the right-hand side in the last column.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double& cost(std::size_t j) { return at(rows_, j); }
  double* row(std::size_t i) { return &data_[i * (cols_ + 1)]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t col) {
    const std::size_t width = cols_ + 1;
    double* pr = row(r);
    const double inv = 1.0 / pr[col];
    for (std::size_t j = 0; j < width; ++j) pr[j] *= inv;
    pr[col] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* pi = row(i);
      const double f = pi[col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) pi[j] -= f * pr[j];
      pi[col] = 0.0;
    }
    basis_[r] = col;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { Optimal, Unbounded };

// `split` is the number of free variables: columns j and j + split hold x+
// and x- of the same variable, and one of them entering while the other is
// basic is a null move (its reduced cost is zero up to drift).
PhaseResult run_phase(Tableau& t, const std::vector<char>& allowed, std::size_t split,
                      const SimplexOptions& opts, std::size_t& pivots, std::size_t limit) {
  std::vector<char> basic(t.cols(), 0);
  std::size_t degenerate_run = 0;
  while (true) {
    std::fill(basic.begin(), basic.end(), 0);
    for (std::size_t b : t.basis()) basic[b] = 1;
    // Dantzig pricing; Bland's lowest-index rule while degenerate pivots
    // keep piling up (and always when `bland_only`).
    const bool bland = opts.bland_only || degenerate_run >= opts.stall_limit;
    std::size_t entering = t.cols();
    double most_negative = -opts.cost_tol;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (j < 2 * split && basic[j < split ? j + split : j - split]) continue;
      if (!allowed[j] || t.cost(j) >= most_negative) continue;
      entering = j;
      if (bland) break;
      most_negative = t.cost(j);
    }
    if (entering == t.cols()) return PhaseResult::Optimal;

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, entering);
      if (a > opts.pivot_tol) best = std::min(best, t.rhs(i) / a);
    }
    // Ties on the ratio go to the lowest basic variable index.
    std::size_t leave = t.rows();
    if (std::isfinite(best)) {
      const double slack = 1e-12 * (1.0 + std::abs(best));
      for (std::size_t i = 0; i < t.rows(); ++i) {
        const double a = t.at(i, entering);
        if (a <= opts.pivot_tol || t.rhs(i) / a > best + slack) continue;
        if (leave == t.rows() || t.basis()[i] < t.basis()[leave]) leave = i;
      }
    }
    if (leave == t.rows()) return PhaseResult::Unbounded;
    if (++pivots > limit) throw PivotLimitExceeded("solve_simplex: pivot limit exceeded");
    degenerate_run = best * t.at(leave, entering) <= opts.pivot_tol ? degenerate_run + 1 : 0;
    t.pivot(leave, entering);
  }
}

// Dual simplex on a dual-feasible tableau whose right-hand side has gone
// slightly negative. Returns false when some row proves primal infeasibility.
bool run_dual_phase(Tableau& t, const std::vector<char>& allowed, std::size_t split,
                    const SimplexOptions& opts, double feas_tol, std::size_t& pivots,
                    std::size_t limit) {
  std::vector<char> basic(t.cols(), 0);
  while (true) {
    std::size_t leave = t.rows();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.rhs(i) < -feas_tol && (leave == t.rows() || t.basis()[i] < t.basis()[leave])) leave = i;
    }
    if (leave == t.rows()) return true;
    std::fill(basic.begin(), basic.end(), 0);
    for (std::size_t b : t.basis()) basic[b] = 1;
    std::size_t entering = t.cols();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!allowed[j] || basic[j]) continue;
      if (j < 2 * split && basic[j < split ? j + split : j - split]) continue;
      const double a = t.at(leave, j);
      if (a >= -opts.pivot_tol) continue;
      const double ratio = std::max(0.0, t.cost(j)) / -a;
      if (ratio < best) {
        best = ratio;
        entering = j;
      }
    }
    if (entering == t.cols()) return false;
    if (++pivots > limit) throw PivotLimitExceeded("solve_simplex: pivot limit exceeded");
    t.pivot(leave, entering);
  }
}

}  // namespace

OracleSolution solve_simplex(const LpProblem& prob, const SimplexOptions& opts) {
  prob.validate();
  const std::size_t m = static_cast<std::size_t>(prob.rows());
  const std::size_t n = static_cast<std::size_t>(prob.cols());
  const Index mi = prob.rows();

  // Relaxed right-hand side: a tiny deterministic positive perturbation
  // breaks the ties that make degenerate vertices stall the pivoting. The
  // final basis is re-evaluated on the exact data below.
  Vector bp = prob.b;
  if (opts.perturbation > 0.0) {
    Xoshiro256 rng(0x5eed5eedULL);
    for (Index i = 0; i < mi; ++i) {
      bp(i) += opts.perturbation * (1.0 + std::abs(prob.b(i))) * rng.uniform(0.5, 1.0);
    }
  }

  std::vector<double> sign(m, 1.0);
  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (bp(static_cast<Index>(i)) < 0.0) {
      sign[i] = -1.0;
      art_rows.push_back(i);
    }
  }
  const std::size_t n_struct = 2 * n + m;
  const std::size_t cols = n_struct + art_rows.size();
  Tableau t(m, cols);

  // Columns: x+ (n), x- (n), slacks (m), artificials.
  for (std::size_t i = 0; i < m; ++i) {
    const double s = sign[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double a = s * prob.A(static_cast<Index>(i), static_cast<Index>(j));
      t.at(i, j) = a;
      t.at(i, n + j) = -a;
    }
    t.at(i, 2 * n + i) = s;
    t.rhs(i) = s * bp(static_cast<Index>(i));
    t.basis()[i] = 2 * n + i;
  }
  for (std::size_t k = 0; k < art_rows.size(); ++k) {
    t.at(art_rows[k], n_struct + k) = 1.0;
    t.basis()[art_rows[k]] = n_struct + k;
  }

  const std::size_t limit = opts.max_pivots > 0 ? opts.max_pivots : 20 * (m + cols) + 1000;
  const double feas_tol = 1e-9 * (1.0 + prob.b.lpNorm<Eigen::Infinity>());
  OracleSolution sol;
  std::vector<char> allowed(cols, 1);

  if (!art_rows.empty()) {
    // Phase 1: minimize the sum of artificials, priced out of the basis.
    for (std::size_t k = 0; k < art_rows.size(); ++k) t.cost(n_struct + k) = 1.0;
    for (std::size_t i : art_rows) {
      for (std::size_t j = 0; j <= cols; ++j) t.at(m, j) -= t.at(i, j);
    }
    run_phase(t, allowed, n, opts, sol.pivots, limit);
    const double infeas = -t.at(m, cols);
    if (infeas > feas_tol) {
      sol.status = OracleStatus::Infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < n_struct) continue;
      for (std::size_t j = 0; j < n_struct; ++j) {
        if (std::abs(t.at(i, j)) > 1e-7) {
          t.pivot(i, j);
          ++sol.pivots;
          break;
        }
      }
    }
    for (std::size_t k = 0; k < art_rows.size(); ++k) allowed[n_struct + k] = 0;
  }

  // Phase 2 objective in reduced-cost form.
  std::vector<double> cz(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cz[j] = prob.c(static_cast<Index>(j));
    cz[n + j] = -prob.c(static_cast<Index>(j));
  }
  for (std::size_t j = 0; j <= cols; ++j) t.at(m, j) = j < cols ? cz[j] : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = cz[t.basis()[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= cols; ++j) t.at(m, j) -= cb * t.at(i, j);
  }
  if (run_phase(t, allowed, n, opts, sol.pivots, limit) == PhaseResult::Unbounded) {
    sol.status = OracleStatus::Unbounded;
    return sol;
  }

  Vector rhs(mi);
  for (std::size_t i = 0; i < m; ++i) rhs(static_cast<Index>(i)) = sign[i] * prob.b(static_cast<Index>(i));

  auto factor_basis = [&](Vector& cb) {
    Matrix basis_cols = Matrix::Zero(mi, mi);
    cb.resize(mi);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t col = t.basis()[k];
      const Index kk = static_cast<Index>(k);
      if (col < 2 * n) {
        const Index j = static_cast<Index>(col % n);
        const double dir = col < n ? 1.0 : -1.0;
        for (std::size_t i = 0; i < m; ++i) {
          basis_cols(static_cast<Index>(i), kk) = dir * sign[i] * prob.A(static_cast<Index>(i), j);
        }
      } else if (col < n_struct) {
        const std::size_t i = col - 2 * n;
        basis_cols(static_cast<Index>(i), kk) = sign[i];
      } else {
        basis_cols(static_cast<Index>(art_rows[col - n_struct]), kk) = 1.0;
      }
      cb(kk) = cz[col];
    }
    return Eigen::PartialPivLU<Matrix>(basis_cols);
  };

  Vector cb;
  Eigen::PartialPivLU<Matrix> lu = factor_basis(cb);
  if (opts.perturbation > 0.0) {
    // Back to the exact right-hand side; the basis stays dual feasible, so
    // any primal infeasibility left over is cleaned up by dual pivots.
    const Vector xb = lu.solve(rhs);
    if (xb.allFinite()) {
      for (std::size_t k = 0; k < m; ++k) t.rhs(k) = xb(static_cast<Index>(k));
      if (!run_dual_phase(t, allowed, n, opts, feas_tol, sol.pivots, limit)) {
        sol.status = OracleStatus::Infeasible;
        return sol;
      }
      lu = factor_basis(cb);
    }
  }
  const Vector xb = lu.solve(rhs);
  const Vector y = lu.transpose().solve(cb);

  sol.x = Vector::Zero(static_cast<Index>(n));
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t col = t.basis()[k];
    if (col < n) sol.x(static_cast<Index>(col)) += xb(static_cast<Index>(k));
    else if (col < 2 * n) sol.x(static_cast<Index>(col - n)) -= xb(static_cast<Index>(k));
  }
  if (!sol.x.allFinite()) {
    // Singular basis; fall back to the tableau values.
    sol.x.setZero();
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t col = t.basis()[k];
      if (col < n) sol.x(static_cast<Index>(col)) += t.rhs(k);
      else if (col < 2 * n) sol.x(static_cast<Index>(col - n)) -= t.rhs(k);
    }
  }
  sol.dual_u = Vector(mi);
  for (std::size_t i = 0; i < m; ++i) sol.dual_u(static_cast<Index>(i)) = sign[i] * y(static_cast<Index>(i));
  if (!sol.dual_u.allFinite()) sol.dual_u.setZero();
  sol.objective = prob.c.dot(sol.x);
  sol.status = OracleStatus::Optimal;
  return sol;
}

}  // namespace conelp
