#pragma once

#include <conelp/cone_projection.hpp>
#include <conelp/types.hpp>

namespace conelp {

struct LeastNormResult {
  Vector x_star;
  double gamma_sq = 1.0;   // min over the cone of |z - e|^2
  double theta_star = 1.0; // 1 / gamma_sq
  Vector z_star;           // projection of e = (0, ..., 0, 1) onto the cone
  ConeProjectionResult cone_result;
  bool origin_feasible = false;
};

// Rows (a_i, -b_i) of the homogenized constraint matrix [A, -b].
Matrix homogenize(const Matrix& a, const Vector& b);

// Least-norm point of {x : A x <= b}. The constraint system is lifted to
// the cone K generated by the rows of [A, -b]; projecting e onto K gives
// gamma^2 = |e - z*|^2 and the lifted minimizer (x*, 1) = (e - z*) / gamma^2.
//
// When the origin is feasible the answer is 0 and no projection is run.
// Throws DegenerateHomogenization when e is (numerically) in K, which is the
// case for an empty polyhedron.
LeastNormResult least_norm_point(const Matrix& a, const Vector& b,
                                 const ProjectionOptions& opts = {});

}  // namespace conelp
