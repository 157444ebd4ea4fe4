#include "qale/random.hpp"

#include <cmath>
#include <numbers>

namespace qale {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ComplexVector Rng::complex_normal(int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal();
    v(i) = Complex(re, normal());
  }
  return v;
}

}  // namespace qale
