#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <conelp/active_basis.hpp>
#include <conelp/types.hpp>

namespace conelp {

// Finite generator set of a polyhedral cone, one generator per row.
class GeneratorSet {
 public:
  explicit GeneratorSet(Matrix rows);

  const Matrix& rows() const { return rows_; }
  Index count() const { return rows_.rows(); }
  Index dim() const { return rows_.cols(); }
  auto row(Index i) const { return rows_.row(i); }

 private:
  Matrix rows_;
};

struct ProjectionOptions {
  double zero_tol = 1e-12;  // coefficient nonnegativity
  double kkt_tol = 1e-9;    // stationarity, relative to |p|
  double lin_tol = 1e-9;    // reconstruction, relative to |p|
  double rank_tol = 1e-11;  // rejection of dependent entering generators
  // 0 selects 5 * (r + d).
  std::size_t max_iterations = 0;
  // Generator indices to seed the active set with.
  std::vector<Index> warm_start;
};

enum class ProjectionStatus { Converged, IterationLimitExceeded };

struct ConeProjectionResult {
  Vector point;
  Vector coeffs;
  std::vector<Index> active;  // sorted ascending
  Vector residual;
  std::size_t iterations = 0;
  std::vector<std::size_t> basis_trace;
  std::vector<double> update_times;  // seconds
  std::size_t refactorizations = 0;
  ProjectionStatus status = ProjectionStatus::Converged;
  std::vector<std::string> warnings;

  bool converged() const { return status == ProjectionStatus::Converged; }
};

// Active-set (Lawson-Hanson) solver state for min |G^T u - p|, u >= 0.
// Works on unit-normalized copies of the generators; coefficients reported
// through result() refer to the original scaling.
class ConeProjector {
 public:
  ConeProjector(const GeneratorSet& gens, const Vector& p, ProjectionOptions opts = {});

  // Dual scores w_i = g_i . r for the current residual (normalized generators).
  const Vector& scores() const { return scores_; }

  // Generator with the largest positive score above the stationarity
  // threshold, lowest index on ties; nullopt once KKT conditions hold.
  std::optional<Index> select_entering() const;

  // Inserts the entering generator and runs the inner loop that keeps the
  // coefficients nonnegative. Returns false when the generator was rejected
  // (numerically dependent or non-positive inner coefficient).
  bool refine_active_set(Index entering);

  // Drives the outer loop to convergence or the iteration limit.
  ConeProjectionResult run();

  const std::vector<Index>& active() const { return active_; }
  const ActiveBasis& basis() const { return basis_; }
  ConeProjectionResult result() const;

 private:
  void seed(const std::vector<Index>& warm);
  void refresh();
  void refactorize();
  void remove_at(Index pos);
  void record(double seconds);

  Matrix unit_;      // d x r normalized generators (columns)
  Vector scale_;     // 1 / |g_i|, 0 for skipped zero rows
  Vector target_;
  ProjectionOptions opts_;
  double pnorm_ = 0.0;

  ActiveBasis basis_;
  std::vector<Index> active_;   // in factorization order
  Vector coeffs_;               // over active_, normalized scaling
  std::vector<char> in_active_;
  std::vector<char> rejected_;
  Vector point_;
  Vector residual_;
  Vector scores_;

  std::size_t iterations_ = 0;
  std::size_t refactorizations_ = 0;
  std::vector<std::size_t> basis_trace_;
  std::vector<double> update_times_;
  std::vector<std::string> warnings_;
  ProjectionStatus status_ = ProjectionStatus::Converged;
};

ConeProjectionResult project_onto_cone(const GeneratorSet& gens, const Vector& p,
                                       const ProjectionOptions& opts = {});

// Exhaustive reference: tries every generator subset of size <= d, solves the
// equality-constrained least squares on it and keeps the best candidate that
// satisfies u >= 0 and the polar conditions. Throws SizeLimitExceeded for
// more than 20 generators.
ConeProjectionResult brute_force_projection(const GeneratorSet& gens, const Vector& p);

}  // namespace conelp
