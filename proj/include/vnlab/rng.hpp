#pragma once

// Deterministic random draws.  The engine is mt19937_64 (bit-exact across
// platforms); the transforms below are hand-rolled because std::*_distribution
// is implementation-defined and would break cross-machine reproducibility.

#include <cmath>
#include <cstdint>
#include <random>

#include "grid.hpp"

namespace vnlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  long long uniform_int(long long lo, long long hi) {  // inclusive ends
    return lo + static_cast<long long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 == 0.0) u1 = uniform();
    double rad = std::sqrt(-2.0 * std::log(u1));
    spare_ = rad * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return rad * std::cos(2.0 * M_PI * u2);
  }

  cplx cnormal() {
    double re = normal(), im = normal();
    return cplx{re, im};
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace vnlab
