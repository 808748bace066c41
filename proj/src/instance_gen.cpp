#include <conelp/instance_gen.hpp>

#include <conelp/errors.hpp>
#include <conelp/rng.hpp>

namespace conelp {

const char* to_string(Family family) {
  return family == Family::Box ? "box" : "dense";
}

Family parse_family(const std::string& name) {
  if (name == "box") return Family::Box;
  if (name == "dense" || name == "box-densified") return Family::BoxDensified;
  throw InvalidInput("unknown instance family '" + name + "'");
}

void InstanceSpec::validate() const {
  if (n < 1 || m < 1) throw InvalidInput("InstanceSpec: n and m must be >= 1");
}

LpProblem gen_box(const InstanceSpec& spec) {
  spec.validate();
  const Index n = spec.n;
  const Index m = spec.m;
  auto cone_rng = Xoshiro256::stream(spec.seed, streams::kConeMatrix);
  auto upper_rng = Xoshiro256::stream(spec.seed, streams::kUpper);
  auto lower_rng = Xoshiro256::stream(spec.seed, streams::kLower);
  auto cost_rng = Xoshiro256::stream(spec.seed, streams::kObjective);

  LpProblem prob;
  prob.A = Matrix::Zero(m + 2 * n, n);
  prob.b = Vector::Zero(m + 2 * n);
  prob.c.resize(n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) prob.A(i, j) = cone_rng.uniform();
  }
  for (Index j = 0; j < n; ++j) {
    prob.A(m + j, j) = 1.0;
    prob.A(m + n + j, j) = -1.0;
    prob.b(m + j) = upper_rng.uniform();
    prob.b(m + n + j) = lower_rng.uniform();
    prob.c(j) = cost_rng.uniform(-5.0, 5.0);
  }
  return prob;
}

Matrix random_unitary(Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("random_unitary: n must be >= 1");
  auto rng = Xoshiro256::stream(seed, 0);
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

LpProblem densify_with(const LpProblem& prob, const Matrix& q) {
  if (q.rows() != prob.cols() || q.cols() != prob.cols()) {
    throw InvalidInput("densify: rotation has wrong dimensions");
  }
  LpProblem out;
  out.A = prob.A * q;
  out.b = prob.b;
  out.c = q.transpose() * prob.c;
  return out;
}

LpProblem densify(const LpProblem& prob, std::uint64_t seed) {
  prob.validate();
  return densify_with(prob, random_unitary(prob.cols(), seed));
}

std::uint64_t densify_seed(std::uint64_t seed) {
  std::uint64_t state = seed ^ 0x5851f42d4c957f2dULL;
  return splitmix64(state);
}

LpProblem generate(const InstanceSpec& spec) {
  LpProblem box = gen_box(spec);
  if (spec.family == Family::Box) return box;
  return densify(box, densify_seed(spec.seed));
}

}  // namespace conelp
