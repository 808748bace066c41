#include "doctest.h"

#include <random>

#include <conelp/active_basis.hpp>

#include "support/oracles.hpp"

using namespace conelp;
using conelp::testing::random_matrix;

namespace {

Matrix gather(const Matrix& cols, const std::vector<Index>& order) {
  Matrix g(cols.rows(), static_cast<Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) g.col(static_cast<Index>(k)) = cols.col(order[k]);
  return g;
}

}  // namespace

TEST_CASE("append builds a QR of the active columns") {
  std::mt19937_64 rng(11);
  const Matrix cols = random_matrix(rng, 6, 4);
  const Vector p = random_matrix(rng, 6, 1).col(0);
  ActiveBasis basis(6, p);
  for (Index j = 0; j < 4; ++j) REQUIRE(basis.append(cols.col(j), 1e-11));
  CHECK(basis.size() == 4);

  const Matrix q = basis.q_factor();
  const Matrix r = basis.r_factor();
  CHECK((q.transpose() * q - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((q * r - cols).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((r.transpose() * r - cols.transpose() * cols).cwiseAbs().maxCoeff() < 1e-12);
  for (Index i = 1; i < 4; ++i) {
    for (Index j = 0; j < i; ++j) CHECK(r(i, j) == 0.0);
  }

  const Vector ls = cols.colPivHouseholderQr().solve(p);
  CHECK((basis.solve() - ls).norm() < 1e-12);
  CHECK((basis.projected_target() - cols * ls).norm() < 1e-12);
}

TEST_CASE("single column gives a 1x1 factor") {
  Vector p(2);
  p << 3.0, 1.0;
  ActiveBasis basis(2, p);
  Vector g(2);
  g << 2.0, 0.0;
  REQUIRE(basis.append(g, 1e-11));
  CHECK(basis.r_factor()(0, 0) == doctest::Approx(2.0));
  CHECK(basis.solve()(0) == doctest::Approx(1.5));
}

TEST_CASE("dependent column is rejected") {
  Vector p = Vector::Ones(3);
  ActiveBasis basis(3, p);
  Vector a(3), b(3);
  a << 1, 0, 0;
  b << 0, 1, 0;
  REQUIRE(basis.append(a, 1e-11));
  REQUIRE(basis.append(b, 1e-11));
  CHECK_FALSE(basis.append(2.0 * a - 3.0 * b, 1e-11));
  CHECK(basis.size() == 2);
  Vector c(3);
  c << 0, 0, 1;
  CHECK(basis.append(c, 1e-11));
  CHECK_FALSE(basis.append(Vector::Ones(3), 1e-11));
}

TEST_CASE("remove keeps the factorization consistent") {
  std::mt19937_64 rng(5);
  const Matrix cols = random_matrix(rng, 7, 5);
  const Vector p = random_matrix(rng, 7, 1).col(0);
  ActiveBasis basis(7, p);
  for (Index j = 0; j < 5; ++j) REQUIRE(basis.append(cols.col(j), 1e-11));

  std::vector<Index> order{0, 1, 2, 3, 4};
  for (Index pos : {1, 2, 0}) {
    basis.remove(pos);
    order.erase(order.begin() + pos);
    const Matrix g = gather(cols, order);
    const Matrix q = basis.q_factor();
    const Matrix r = basis.r_factor();
    CHECK((q * r - g).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((q.transpose() * q - Matrix::Identity(g.cols(), g.cols())).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((basis.solve() - g.colPivHouseholderQr().solve(p)).norm() < 1e-11);
  }

  CHECK_FALSE(basis.append(cols.col(2), 1e-11));  // still active
  REQUIRE(basis.append(cols.col(1), 1e-11));
  order.push_back(1);
  const Matrix g = gather(cols, order);
  CHECK((basis.q_factor() * basis.r_factor() - g).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("clear empties the basis") {
  ActiveBasis basis(2, Vector::Ones(2));
  REQUIRE(basis.append(Vector::Ones(2), 1e-11));
  basis.clear();
  CHECK(basis.empty());
  CHECK(basis.solve().size() == 0);
  CHECK(basis.projected_target().norm() == 0.0);
}
