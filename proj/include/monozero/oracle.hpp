#pragma once

// Brute-force reference solvers, independent of the iteration kernels: a
// damped multi-start Newton method for operator zeros (with a grid-refinement
// fallback in one and two dimensions), a dense closed-form solve for linear
// operators, and a tiny-step projected-gradient method for variational
// inequalities over set intersections.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "monozero/operators.hpp"
#include "monozero/projections.hpp"

namespace monozero {

enum class OracleMethod { newton, projected_gradient, closed_form };

const char* to_string(OracleMethod method);

struct OracleSolution {
  PrimalVector point;
  OracleMethod method;
  double residual;       // dual_norm(T point), or the VI fixed-point residual
  double certified_tol;  // the tolerance the residual was verified against
};

class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchRegion {
  PrimalVector center;
  double radius;
};

// Damped Newton with a central finite-difference Jacobian from several seeded
// starts inside the region; for n <= 2 a coarse-to-fine grid refinement is
// tried when Newton fails.  Dense method: requires n <= 10.  Success means
// dual_norm(T y) <= tol.
OracleSolution oracle_zero(const MonotoneOperator& T, const SearchRegion& region,
                           double tol, std::uint64_t seed = 1234567);

// Solves G y = b directly; the zero of y -> Gy - b.
OracleSolution oracle_zero_linear(const SpaceSpec& space, const std::vector<double>& G,
                                  const DualCovector& b);

// Projected gradient x <- P_C(x - gamma T x) with gamma = sqrt(tol), run from
// the witness until the fixed-point residual ||x - P_C(x - gamma T x)||_2
// drops to tol.  P_C is the metric projection onto the intersection of the
// sets, computed by Dykstra's algorithm.  Hilbert spaces only.
OracleSolution oracle_vi(const MonotoneOperator& T,
                         const std::vector<ConvexSetSpec>& sets,
                         const PrimalVector& witness, double tol);

// Metric projection onto the intersection of the sets (Dykstra).  Exposed for
// tests; plain cyclic projection does not produce the metric projection.
PrimalVector project_intersection(const std::vector<ConvexSetSpec>& sets,
                                  const PrimalVector& x, double tol,
                                  long max_sweeps = 100000);

}  // namespace monozero
