#include <conelp/least_norm.hpp>

#include <conelp/errors.hpp>

namespace conelp {

Matrix homogenize(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw InvalidInput("homogenize: A and b row counts differ");
  Matrix bar(a.rows(), a.cols() + 1);
  bar.leftCols(a.cols()) = a;
  bar.col(a.cols()) = -b;
  return bar;
}

LeastNormResult least_norm_point(const Matrix& a, const Vector& b,
                                 const ProjectionOptions& opts) {
  if (a.rows() != b.size() || a.rows() < 1 || a.cols() < 1) {
    throw InvalidInput("least_norm_point: inconsistent dimensions");
  }
  if (!a.allFinite() || !b.allFinite()) throw InvalidInput("least_norm_point: non-finite data");

  const Index n = a.cols();
  LeastNormResult res;
  if ((b.array() >= 0.0).all()) {
    res.x_star = Vector::Zero(n);
    res.z_star = Vector::Zero(n + 1);
    res.gamma_sq = 1.0;
    res.theta_star = 1.0;
    res.origin_feasible = true;
    res.cone_result.point = res.z_star;
    res.cone_result.coeffs = Vector::Zero(a.rows());
    res.cone_result.residual = Vector::Unit(n + 1, n);
    return res;
  }

  const Vector e = Vector::Unit(n + 1, n);
  res.cone_result = project_onto_cone(GeneratorSet(homogenize(a, b)), e, opts);
  res.z_star = res.cone_result.point;
  const Vector r = e - res.z_star;
  if (r.norm() <= opts.kkt_tol) {
    throw DegenerateHomogenization(
        "least_norm_point: e lies in the homogenized cone (empty polyhedron?)");
  }
  res.gamma_sq = r.squaredNorm();
  res.theta_star = 1.0 / res.gamma_sq;
  // The lifted minimizer is theta* (e - z*); the opposite orientation
  // (z* - e) would put -1 into the normalization coordinate.
  res.x_star = res.theta_star * r.head(n);
  return res;
}

}  // namespace conelp
