#pragma once

// Operator abstraction T: primal -> dual with declared strong-monotonicity
// metadata, the built-in example operators, gradient wrappers, and empirical
// certification sweeps.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monozero/lp_space.hpp"

namespace monozero {

struct MonotoneOperator {
  std::function<DualCovector(const PrimalVector&)> apply;
  SpaceSpec space;
  double p_claim;    // exponent in the claimed bound <Tx-Ty, x-y> >= eta ||x-y||^p
  double eta_claim;  // advisory; the certificate sweep is the empirical check
  std::string label;

  DualCovector operator()(const PrimalVector& x) const { return apply(x); }
};

struct MonotonicityCertificate {
  double eta_hat;  // empirical infimum of the monotonicity quotient
  PrimalVector worst_x;
  PrimalVector worst_y;
  long samples;
  double region_radius;
  std::uint64_t seed;
};

struct CoercivityRow {
  double radius;
  double min_quotient;  // min over directions of <x, Tx> / ||x|| at ||x|| = radius
};

// Tx = ||x||_2^{p-2} x with p = space.p; requires p >= 2.  The zero vector
// maps to zero.  eta_claim = 2^{2-p}.
MonotoneOperator power_map(const SpaceSpec& space);

// Tx = Gx - b with G given row-major.  Requires the symmetric part of G to be
// positive definite; eta_claim is its smallest eigenvalue, p_claim = 2.
MonotoneOperator linear_map(const SpaceSpec& space, const std::vector<double>& G,
                            const DualCovector& b);

// Wraps an analytic gradient when supplied; otherwise central finite
// differences with step h (default 1e-6 * (1 + ||x||_inf), recomputed per
// point).  Throws if the functional produces a non-finite value.
MonotoneOperator gradient_of(const SpaceSpec& space,
                             std::function<double(const PrimalVector&)> f,
                             std::function<DualCovector(const PrimalVector&)> grad = nullptr,
                             std::optional<double> h = std::nullopt);

// min over seeded random pairs x != y in the Euclidean ball of the given
// radius of pair(Tx - Ty, x - y) / ||x - y||_s^p.  Deterministic per seed.
MonotonicityCertificate certify_strong_monotonicity(const MonotoneOperator& T,
                                                    double p, long samples,
                                                    double radius,
                                                    std::uint64_t seed);

// One row per radius: min over seeded directions of <x, Tx> / ||x||_s at
// ||x||_s = radius.  Radii must be positive and strictly increasing.
std::vector<CoercivityRow> coercivity_probe(const MonotoneOperator& T,
                                            const std::vector<double>& radii,
                                            int directions, std::uint64_t seed);

// A scalar objective with its analytic gradient; the minimize driver's input.
struct Functional {
  std::function<double(const PrimalVector&)> value;
  std::function<DualCovector(const PrimalVector&)> gradient;
  std::string label;
};

// f(x) = 1/2 ||x - c||_2^2, gradient x - c.
Functional quadratic_functional(const PrimalVector& center);

// f(x) = sum_i [ 1/4 (x_i - c_i)^4 + 1/2 (x_i - c_i)^2 ], gradient
// (x_i - c_i)^3 + (x_i - c_i).  Coercive with unique minimizer c.
Functional quartic_functional(const PrimalVector& center);

}  // namespace monozero
