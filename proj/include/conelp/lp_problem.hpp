#pragma once

#include <conelp/types.hpp>

namespace conelp {

// min c x  subject to  A x <= b, with dense data.
struct LpProblem {
  Matrix A;
  Vector b;
  Vector c;

  Index rows() const { return A.rows(); }
  Index cols() const { return A.cols(); }

  // Throws InvalidInput on inconsistent dimensions or non-finite entries.
  void validate() const;
};

}  // namespace conelp
