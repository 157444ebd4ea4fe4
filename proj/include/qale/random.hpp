// Seeded pseudo-random numbers that are identical on every platform: the
// standard distributions are implementation-defined, so doubles are built
// directly from the 64-bit engine output.
#pragma once

#include "qale/matgroup.hpp"

#include <cstdint>
#include <random>

namespace qale {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1), 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  /// Standard normal (Box-Muller).
  double normal();
  /// Independent standard complex normal entries.
  ComplexVector complex_normal(int n);
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qale
