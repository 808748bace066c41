#pragma once

#include <Eigen/Dense>

namespace conelp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace conelp
