#pragma once

// Iteration kernels: the anchored dual-space update for zeros of strongly
// monotone operators, its direct Hilbert form, the minimization and
// variational-inequality drivers, a projected-gradient baseline, and the
// resolvent with its regularization path.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "monozero/lp_space.hpp"
#include "monozero/operators.hpp"
#include "monozero/projections.hpp"
#include "monozero/schedules.hpp"

namespace monozero {

// A tolerance of 0 disables that test; at least one must be positive.
struct StopRule {
  double tol_residual;  // on dual_norm(T x_n)
  double tol_step;      // on ||x_{n+1} - x_n||_s
  long max_iter;

  StopRule(double tol_residual_, double tol_step_, long max_iter_);
};

enum class SolveStatus {
  converged_residual,
  converged_step,
  max_iter_reached,
  diverged_nonfinite,
};

const char* to_string(SolveStatus status);

struct TraceRow {
  long n;
  double lambda;
  double theta;
  double residual_dual;
  double step_norm;  // 0 at n = 1
  std::optional<double> phi_to_ref;
  std::optional<double> feasibility_gap;  // VI driver only; never serialized
  std::vector<double> coords;             // filled only when record_coords is set
};

struct IterationTrace {
  std::vector<TraceRow> rows;
  bool has_phi = false;
  bool has_coords = false;
  int dim = 0;
};

struct SolveReport {
  SolveStatus status;
  PrimalVector final_point;
  double final_residual;
  long iterations;
  long diverged_at = -1;             // n of the offending update when nonfinite
  std::optional<double> final_value;  // minimize only: f at the final point
};

struct SolveResult {
  SolveReport report;
  IterationTrace trace;
};

// Rows are recorded at every n <= dense_until, then every stride_after-th n;
// the final row is always recorded.  When reference is set the trace carries
// phi_to_ref = phi_p(reference, x_n).
struct TraceOptions {
  long dense_until = 10000;
  long stride_after = 10;
  bool record_coords = false;
  std::optional<PrimalVector> reference;
};

// The kernels consume the schedule as a callable pair so that degenerate
// debug sequences (theta identically 0) stay expressible.
struct ScheduleFns {
  std::function<double(long)> lambda;
  std::function<double(long)> theta;
};

ScheduleFns schedule_fns(const PowerSchedule& schedule);

// x_{n+1} = J^{-1}(J x_n - lambda_n (T x_n + theta_n (J x_n - J x_1))),
// J the gauge-p duality map of the space, anchor x_1 fixed.
SolveResult solve_zero(const SpaceSpec& space, const MonotoneOperator& T,
                       const PrimalVector& x1, const ScheduleFns& fns,
                       const StopRule& stop, const TraceOptions& opts = {});

// Direct Hilbert form x_{n+1} = x_n - lambda_n (T x_n + theta_n (x_n - x_1));
// requires s = p = 2.  Agrees with solve_zero there bit for bit (the duality
// map is the exact identity and the update shares its arithmetic shape).
SolveResult solve_zero_hilbert(const SpaceSpec& space, const MonotoneOperator& T,
                               const PrimalVector& x1, const ScheduleFns& fns,
                               const StopRule& stop, const TraceOptions& opts = {});

// Drives the gradient (analytic when the functional carries one, central
// finite differences otherwise) through solve_zero; the report additionally
// records the objective at the final point.
SolveResult minimize(const SpaceSpec& space, const Functional& f,
                     const PrimalVector& x1, const ScheduleFns& fns,
                     const StopRule& stop, const TraceOptions& opts = {});

// w_n = member_{[n]}(x_n) with [n] cycling through the family;
// x_{n+1} = J^{-1}(J w_n - lambda_n (T w_n + theta_n (J w_n - J a_n))) with
// anchor a_n = member_{[n]}(x_1) recomputed under the current member.  In a
// Hilbert space the direct form w_n - lambda_n (T w_n + theta_n (w_n - a_n))
// is used.  Trace rows carry feasibility_gap = max_i ||x_n - member_i(x_n)||.
SolveResult solve_vi(const SpaceSpec& space, const MonotoneOperator& T,
                     const CyclicFamily& family, const PrimalVector& x1,
                     const ScheduleFns& fns, const StopRule& stop,
                     const TraceOptions& opts = {});

// x_{n+1} = P_K(x_n - eta_n T x_n); requires s = p = 2.  Trace lambda column
// holds eta_n, theta column 0.
SolveResult gradient_projection(const SpaceSpec& space, const MonotoneOperator& T,
                                const ConvexSetSpec& set, const PrimalVector& x1,
                                const std::function<double(long)>& stepsize,
                                const StopRule& stop, const TraceOptions& opts = {});

inline SolveResult solve_zero(const SpaceSpec& space, const MonotoneOperator& T,
                              const PrimalVector& x1, const PowerSchedule& schedule,
                              const StopRule& stop, const TraceOptions& opts = {}) {
  return solve_zero(space, T, x1, schedule_fns(schedule), stop, opts);
}

inline SolveResult solve_zero_hilbert(const SpaceSpec& space, const MonotoneOperator& T,
                                      const PrimalVector& x1, const PowerSchedule& schedule,
                                      const StopRule& stop, const TraceOptions& opts = {}) {
  return solve_zero_hilbert(space, T, x1, schedule_fns(schedule), stop, opts);
}

inline SolveResult minimize(const SpaceSpec& space, const Functional& f,
                            const PrimalVector& x1, const PowerSchedule& schedule,
                            const StopRule& stop, const TraceOptions& opts = {}) {
  return minimize(space, f, x1, schedule_fns(schedule), stop, opts);
}

inline SolveResult solve_vi(const SpaceSpec& space, const MonotoneOperator& T,
                            const CyclicFamily& family, const PrimalVector& x1,
                            const PowerSchedule& schedule, const StopRule& stop,
                            const TraceOptions& opts = {}) {
  return solve_vi(space, T, family, x1, schedule_fns(schedule), stop, opts);
}

struct ResolventResult {
  PrimalVector y;
  double t;
  long inner_iterations;
  double residual;  // dual_norm(J y + t T y - J x), recomputed once at exit
};

class ResolventFailure : public std::runtime_error {
 public:
  ResolventFailure(const std::string& what, double best_residual_, long iterations_)
      : std::runtime_error(what), best_residual(best_residual_), iterations(iterations_) {}

  double best_residual;
  long iterations;
};

// Solves J y + t T y = J x by the damped dual-space fixed point
// y <- J^{-1}(J y - beta (J y + t T y - J x)), beta initialized from a local
// Lipschitz estimate (two probe evaluations of T) as 1/(1 + t L) and halved
// whenever the residual fails to decrease.  Throws ResolventFailure carrying
// the best residual when inner_max trials do not reach inner_tol.
ResolventResult resolvent(const SpaceSpec& space, const MonotoneOperator& T,
                          double t, const PrimalVector& x, double inner_tol,
                          long inner_max = 200000);

struct PathRow {
  long n;
  double theta;
  PrimalVector y;
  long inner_iterations;
  double stationarity_residual;  // dual_norm(T y - theta (J x1 - J y))
  double consecutive_gap;        // dual_norm(J y_prev - J y); 0 on the first row
  double consecutive_bound;      // (theta_prev/theta - 1) * dual_norm(J y_prev - J x1)
};

// y = resolvent(t = 1/theta_n, x = x1) at each requested index n.  Indices
// must be >= 1 and strictly increasing.  A resolvent failure is rethrown with
// the offending index named.
std::vector<PathRow> regularization_path(const SpaceSpec& space,
                                         const MonotoneOperator& T,
                                         const PrimalVector& x1,
                                         const PowerSchedule& schedule,
                                         const std::vector<long>& indices,
                                         double inner_tol, long inner_max = 200000);

// {1, 10, 100, ..., 10^{m-1}}.
std::vector<long> decades(int m);

}  // namespace monozero
