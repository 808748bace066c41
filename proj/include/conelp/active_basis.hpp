#pragma once

#include <conelp/types.hpp>

namespace conelp {

// Thin QR factorization G_S = Q R of the active generator columns, kept in
// step with the projection target through qtp = Q^T p. R is the upper
// triangular factor of the active Gram matrix (R^T R = G_S^T G_S).
//
// Columns are appended by twice-iterated classical Gram-Schmidt and removed
// by a chain of Givens rotations, so an append costs O(d k) and a removal at
// position j costs O(d (k - j)).
class ActiveBasis {
 public:
  ActiveBasis(Index dim, Vector target);

  Index dim() const { return q_.rows(); }
  Index size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Appends column g. Returns false (and leaves the factorization untouched)
  // when g is numerically dependent on the current columns, i.e. its
  // component orthogonal to span(Q) is below rank_tol * |g|.
  bool append(const Vector& g, double rank_tol);

  // Removes the column at position pos, restoring triangular form.
  void remove(Index pos);

  void clear() { size_ = 0; }

  // Least-squares coefficients of the target on the active columns.
  Vector solve() const;

  // Projection of the target onto span(G_S).
  Vector projected_target() const;

  // Upper-triangular factor (size() x size()).
  Matrix r_factor() const { return r_.topLeftCorner(size_, size_); }
  Matrix q_factor() const { return q_.leftCols(size_); }

 private:
  void grow();

  Matrix q_;
  Matrix r_;
  Vector qtp_;
  Vector target_;
  Index size_ = 0;
};

}  // namespace conelp
