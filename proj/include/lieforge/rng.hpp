#pragma once

#include <random>

#include "lieforge/rational.hpp"

namespace lieforge {

// Deterministic RNG. Every sampled check in the library goes through a
// seeded instance so that two runs with the same config are bit-identical.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  int uniform(int lo, int hi) {  // inclusive bounds
    std::uniform_int_distribution<int> d(lo, hi);
    return d(g_);
  }

  Rat small_rat(int num_range = 9, int den_range = 4) {
    int n = uniform(-num_range, num_range);
    int d = uniform(1, den_range);
    return rat(n, d);
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace lieforge
