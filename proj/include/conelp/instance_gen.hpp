#pragma once

#include <cstdint>
#include <string>

#include <conelp/lp_problem.hpp>

namespace conelp {

enum class Family { Box, BoxDensified };

const char* to_string(Family family);
// Accepts "box", "dense" and "box-densified".
Family parse_family(const std::string& name);

struct InstanceSpec {
  Family family = Family::Box;
  Index n = 1;  // variables
  Index m = 1;  // rows of the cone block A
  std::uint64_t seed = 0;

  void validate() const;
};

// RNG streams of gen_box; random_unitary draws from stream 0 of its seed.
namespace streams {
inline constexpr unsigned kConeMatrix = 0;
inline constexpr unsigned kUpper = 1;
inline constexpr unsigned kLower = 2;
inline constexpr unsigned kObjective = 3;
}  // namespace streams

// min c x  s.t.  A x <= 0,  -g <= x <= f, stacked as [A; I; -I] x <= [0; f; g]
// with A, f, g ~ U[0, 1] and c ~ U[-5, 5]. The origin is feasible and the
// feasible set lies in [-1, 1]^n.
LpProblem gen_box(const InstanceSpec& spec);

// Haar-distributed orthogonal matrix: Householder QR of a standard Gaussian
// matrix, columns sign-fixed so that diag(R) > 0.
Matrix random_unitary(Index n, std::uint64_t seed);

// Substitutes x = Q z: constraint matrix A Q, objective c Q, rhs unchanged.
LpProblem densify(const LpProblem& prob, std::uint64_t seed);
LpProblem densify_with(const LpProblem& prob, const Matrix& q);

// Seed of the rotation used for the BoxDensified family.
std::uint64_t densify_seed(std::uint64_t seed);

LpProblem generate(const InstanceSpec& spec);

}  // namespace conelp
