#include <conelp/active_basis.hpp>

#include <algorithm>
#include <cmath>

#include <conelp/errors.hpp>

namespace conelp {

ActiveBasis::ActiveBasis(Index dim, Vector target) : target_(std::move(target)) {
  if (dim < 1 || target_.size() != dim) {
    throw InvalidInput("ActiveBasis: target dimension mismatch");
  }
  const Index cap = std::min<Index>(dim, 8);
  q_.resize(dim, cap);
  r_.setZero(cap, cap);
  qtp_.setZero(cap);
}

void ActiveBasis::grow() {
  const Index cap = std::min<Index>(dim(), std::max<Index>(2 * q_.cols(), 8));
  q_.conservativeResize(Eigen::NoChange, cap);
  Matrix r = Matrix::Zero(cap, cap);
  r.topLeftCorner(size_, size_) = r_.topLeftCorner(size_, size_);
  r_ = std::move(r);
  qtp_.conservativeResize(cap);
}

bool ActiveBasis::append(const Vector& g, double rank_tol) {
  if (size_ >= dim()) return false;
  const double gnorm = g.norm();
  if (!(gnorm > 0.0)) return false;

  Vector v = g;
  Vector h = Vector::Zero(size_);
  if (size_ > 0) {
    auto qk = q_.leftCols(size_);
    for (int pass = 0; pass < 2; ++pass) {
      const Vector dh = qk.transpose() * v;
      v.noalias() -= qk * dh;
      h += dh;
    }
  }
  const double rho = v.norm();
  if (rho <= rank_tol * gnorm) return false;

  if (size_ == q_.cols()) grow();
  q_.col(size_) = v / rho;
  r_.col(size_).head(size_) = h;
  r_(size_, size_) = rho;
  qtp_(size_) = q_.col(size_).dot(target_);
  ++size_;
  return true;
}

void ActiveBasis::remove(Index pos) {
  if (pos < 0 || pos >= size_) throw InvalidInput("ActiveBasis::remove: bad position");
  const Index k = size_;
  // Shift columns left; R becomes upper Hessenberg from column pos on.
  for (Index j = pos; j + 1 < k; ++j) {
    r_.col(j).head(j + 2) = r_.col(j + 1).head(j + 2);
  }
  r_.col(k - 1).setZero();

  for (Index i = pos; i + 1 < k; ++i) {
    const double a = r_(i, i);
    const double b = r_(i + 1, i);
    if (b == 0.0) continue;
    const double hyp = std::hypot(a, b);
    const double c = a / hyp;
    const double s = b / hyp;
    for (Index j = i; j + 1 < k; ++j) {
      const double x = r_(i, j);
      const double y = r_(i + 1, j);
      r_(i, j) = c * x + s * y;
      r_(i + 1, j) = -s * x + c * y;
    }
    r_(i + 1, i) = 0.0;
    for (Index row = 0; row < dim(); ++row) {
      const double x = q_(row, i);
      const double y = q_(row, i + 1);
      q_(row, i) = c * x + s * y;
      q_(row, i + 1) = -s * x + c * y;
    }
    const double x = qtp_(i);
    const double y = qtp_(i + 1);
    qtp_(i) = c * x + s * y;
    qtp_(i + 1) = -s * x + c * y;
  }
  r_.row(k - 1).setZero();
  --size_;
}

Vector ActiveBasis::solve() const {
  if (size_ == 0) return Vector();
  return r_.topLeftCorner(size_, size_)
      .triangularView<Eigen::Upper>()
      .solve(qtp_.head(size_));
}

Vector ActiveBasis::projected_target() const {
  if (size_ == 0) return Vector::Zero(dim());
  return q_.leftCols(size_) * qtp_.head(size_);
}

}  // namespace conelp
