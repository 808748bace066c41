#pragma once

#include <cstddef>

#include <conelp/lp_problem.hpp>

namespace conelp {

enum class OracleStatus { Optimal, Infeasible, Unbounded };

const char* to_string(OracleStatus status);

struct OracleSolution {
  OracleStatus status = OracleStatus::Infeasible;
  Vector x;
  double objective = 0.0;
  Vector dual_u;  // u <= 0 multipliers of A x <= b, when Optimal
  std::size_t pivots = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double cost_tol = 1e-9;
  // 0 selects 20 * (rows + columns) + 1000.
  std::size_t max_pivots = 0;
  // Price with Bland's rule only. Otherwise the most negative reduced cost
  // enters, and Bland's rule takes over after `stall_limit` consecutive
  // degenerate pivots until the objective moves again.
  bool bland_only = false;
  std::size_t stall_limit = 50;
  // Relative size of the right-hand-side relaxation used while pivoting;
  // 0 pivots on the exact data throughout.
  double perturbation = 1e-7;
};

// Reference solver: dense tableau, two-phase primal simplex with Bland's
// anti-cycling rule, free variables split as x = x+ - x-, one slack per row.
// Pivoting runs on a slightly relaxed right-hand side; the final basis is
// re-solved from the original data (with dual simplex cleanup if the exact
// right-hand side makes it infeasible).
// Throws PivotLimitExceeded.
OracleSolution solve_simplex(const LpProblem& prob, const SimplexOptions& opts = {});

}  // namespace conelp
