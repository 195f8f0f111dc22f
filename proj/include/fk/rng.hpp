#pragma once

#include <cstdint>

namespace fk {

// splitmix64 output function.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based splittable stream: draw k of stream s under a seed is a pure
// function of (seed, s, k). Chains own disjoint streams and replay exactly.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream)
      : base_(mix64(seed ^ mix64(stream + 0x9E3779B97F4A7C15ull))) {}

  uint64_t next() { return mix64(base_ + ++counter_ * 0x9E3779B97F4A7C15ull); }
  double unit() { return (next() >> 11) * 0x1.0p-53; }  // [0,1)
  bool bern(double p) { return unit() < p; }
  uint64_t counter() const { return counter_; }

 private:
  uint64_t base_;
  uint64_t counter_ = 0;
};

}  // namespace fk
