#include "monozero/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace monozero {

double tolerance_scale(std::initializer_list<double> terms) {
  double m = 0.0;
  for (double t : terms) m = std::max(m, std::abs(t));
  return 1.0 + m;
}

FunctionalValue phi_p_parts(const SpaceSpec& space, const PrimalVector& x,
                            const PrimalVector& y) {
  const double p = space.p;
  FunctionalValue out{};
  out.components[0] = std::pow(norm(space, x), p);
  out.components[1] = -p * pair(duality_map(space, y), x);
  out.components[2] = (p / space.q) * std::pow(norm(space, y), p);
  out.value = out.components[0] + out.components[1] + out.components[2];
  return out;
}

double phi_p(const SpaceSpec& space, const PrimalVector& x, const PrimalVector& y) {
  return phi_p_parts(space, x, y).value;
}

double phi_p_qx_variant(const SpaceSpec& space, const PrimalVector& x,
                        const PrimalVector& y) {
  const double p = space.p;
  return (p / space.q) * std::pow(norm(space, x), space.q) -
         p * pair(duality_map(space, y), x) + std::pow(norm(space, y), p);
}

FunctionalValue v_p_parts(const SpaceSpec& space, const PrimalVector& x,
                          const DualCovector& f) {
  const double p = space.p;
  FunctionalValue out{};
  out.components[0] = std::pow(norm(space, x), p);
  out.components[1] = -p * pair(f, x);
  out.components[2] = (p / space.q) * std::pow(dual_norm(space, f), space.q);
  out.value = out.components[0] + out.components[1] + out.components[2];
  return out;
}

double v_p(const SpaceSpec& space, const PrimalVector& x, const DualCovector& f) {
  return v_p_parts(space, x, f).value;
}

double lemma4_residual(const SpaceSpec& space, const PrimalVector& x,
                       const DualCovector& xstar, const DualCovector& ystar) {
  const double p = space.p;
  const double lhs = v_p(space, x, xstar + ystar);
  const double rhs = v_p(space, x, xstar) +
                     p * pair(ystar, inverse_duality_map(space, xstar) - x);
  return lhs - rhs;
}

double lemma5_residual(const SpaceSpec& space, const PrimalVector& x,
                       const PrimalVector& y) {
  const double p = space.p;
  return std::pow(norm(space, x - y), p) - std::pow(norm(space, y), p) +
         p * pair(duality_map(space, y), x);
}

double lemma6_residual(const SpaceSpec& space, const PrimalVector& x,
                       const PrimalVector& y, const PrimalVector& z) {
  const double p = space.p;
  const double diff = phi_p(space, y, x) - phi_p(space, y, z);
  const double cross =
      p * pair(duality_map(space, x) - duality_map(space, z), z - y);
  return diff - cross;
}

PhiBounds phi_bounds_check(const SpaceSpec& space, const PrimalVector& x,
                           const PrimalVector& y) {
  if (space.p < 2.0) {
    throw std::invalid_argument("phi_bounds_check: requires p >= 2");
  }
  PhiBounds out{};
  const double a = norm(space, x);
  const double b = norm(space, y);
  out.phi = phi_p(space, x, y);
  out.lower = std::pow(std::abs(a - b), space.p);
  out.upper = std::pow(a + b, space.p);
  const double tol = 1e-9 * tolerance_scale({out.phi, out.upper});
  out.lower_ok = out.lower <= out.phi + tol;
  out.upper_ok = out.phi <= out.upper + tol;
  return out;
}

}  // namespace monozero
