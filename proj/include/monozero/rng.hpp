#pragma once

// Seeded sampling with an explicitly specified stream: identical seeds give
// identical draws on every platform, independent of standard-library
// distribution internals.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "monozero/lp_space.hpp"

namespace monozero {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; one fresh pair of uniforms per draw.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Uniform draw from the Euclidean ball of the given radius.
inline PrimalVector sample_ball(Rng& rng, int n, double radius) {
  PrimalVector x(static_cast<std::size_t>(n));
  double nrm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = rng.normal();
    nrm2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  }
  nrm2 = std::sqrt(nrm2);
  double r = radius * std::pow(rng.uniform01(), 1.0 / n);
  double scale = (nrm2 > 0.0) ? r / nrm2 : 0.0;
  for (auto& t : x.coords) t *= scale;
  return x;
}

// Componentwise uniform draw from [lo, hi]^n.
inline PrimalVector sample_box(Rng& rng, int n, double lo, double hi) {
  PrimalVector x(static_cast<std::size_t>(n));
  for (auto& t : x.coords) t = rng.uniform(lo, hi);
  return x;
}

}  // namespace monozero
