#pragma once

#include <cstdint>

namespace conelp {

// xoshiro256** (Blackman & Vigna), seeded through splitmix64. Independent
// streams are obtained with jump(), which advances 2^128 steps:
// stream(seed, k) is the seeded generator jumped k times.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  static Xoshiro256 stream(std::uint64_t seed, unsigned index);

  std::uint64_t next();
  void jump();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal by the Box-Muller transform.
  double normal();

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace conelp
