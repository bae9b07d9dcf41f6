#pragma once

// Lyapunov functionals on l_s spaces and executable residual checks for the
// inequalities the solver's convergence argument rests on.

#include "monozero/lp_space.hpp"

namespace monozero {

// A functional evaluation split into its three additive terms; value is their
// sum (within 1e-12 relative).
struct FunctionalValue {
  double value;
  double components[3];
};

// phi_p(x, y) = ||x||^p - p<J_p y, x> + (p/q)||y||^p.  Nonnegative, zero iff
// x = y; equals p times the Bregman distance of ||.||^p / p; reduces to
// ||x||^2 - 2<x, y> + ||y||^2 in the Hilbert case p = s = 2.
double phi_p(const SpaceSpec& space, const PrimalVector& x, const PrimalVector& y);

FunctionalValue phi_p_parts(const SpaceSpec& space, const PrimalVector& x,
                            const PrimalVector& y);

// Variant with a (p/q)||x||^q leading term instead of ||x||^p.  Not a Bregman
// distance: nonzero on the diagonal whenever p != 2 and ||x|| differs from 0
// and 1.  Kept only so the difference from phi_p can be demonstrated; nothing
// in the solver uses it.
double phi_p_qx_variant(const SpaceSpec& space, const PrimalVector& x,
                        const PrimalVector& y);

// v_p(x, f) = phi_p(x, inverse_duality_map(f)); closed form
// ||x||^p - p<f, x> + (p/q)||f||_*^q.  The two routes agree within
// 1e-10 relative.
double v_p(const SpaceSpec& space, const PrimalVector& x, const DualCovector& f);

FunctionalValue v_p_parts(const SpaceSpec& space, const PrimalVector& x,
                          const DualCovector& f);

// v_p(x, xstar + ystar) - v_p(x, xstar) - p<ystar, J^{-1} xstar - x>.
// Contract: >= -1e-9 * (1 + |v_p(x, xstar + ystar)|).
double lemma4_residual(const SpaceSpec& space, const PrimalVector& x,
                       const DualCovector& xstar, const DualCovector& ystar);

// ||x - y||^p - ||y||^p + p<J_p y, x>.  Contract: >= -1e-9 * scale; holds
// globally (it is the supporting-hyperplane inequality of ||.||^p / p).
double lemma5_residual(const SpaceSpec& space, const PrimalVector& x,
                       const PrimalVector& y);

// [phi_p(y, x) - phi_p(y, z)] - p<J_p x - J_p z, z - y>.  Contract:
// >= -1e-9 * scale; the expression collapses to phi_p(z, x).
double lemma6_residual(const SpaceSpec& space, const PrimalVector& x,
                       const PrimalVector& y, const PrimalVector& z);

struct PhiBounds {
  bool lower_ok;
  bool upper_ok;
  double phi;
  double lower;  // | ||x|| - ||y|| |^p
  double upper;  // ( ||x|| + ||y|| )^p
};

// Checks | ||x|| - ||y|| |^p <= phi_p(x, y) <= (||x|| + ||y||)^p within
// 1e-9 * scale.  Requires p >= 2.  The lower bound holds for every p >= 2;
// the upper bound provably fails for p > 2 when ||x|| is small relative to
// ||y|| (phi_p(0, y) = (p-1)||y||^p), and the flag reports that honestly.
PhiBounds phi_bounds_check(const SpaceSpec& space, const PrimalVector& x,
                           const PrimalVector& y);

// 1 + the largest magnitude among the given terms; the scale against which
// residual tolerances are taken.
double tolerance_scale(std::initializer_list<double> terms);

}  // namespace monozero
