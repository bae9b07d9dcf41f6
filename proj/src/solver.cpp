#include "monozero/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "monozero/geometry.hpp"

namespace monozero {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double t : v) {
    if (!std::isfinite(t)) return false;
  }
  return true;
}

void require_point(const SpaceSpec& space, const PrimalVector& x, const char* who) {
  if (x.size() != static_cast<std::size_t>(space.n)) {
    throw std::invalid_argument(std::string(who) + ": start point dimension mismatch");
  }
}

using UpdateFn = std::function<PrimalVector(const PrimalVector&, const DualCovector&, long)>;
using GapFn = std::function<double(const PrimalVector&)>;

// One stop-rule-driven anchored iteration.  update(x_n, T x_n, n) -> x_{n+1};
// lambda/theta are recorded from fns for the trace even when update ignores
// them (the projected-gradient baseline reuses the lambda column for eta_n).
SolveResult run_loop(const SpaceSpec& space, const MonotoneOperator& T,
                     const PrimalVector& x1, const ScheduleFns& fns,
                     const StopRule& stop, const TraceOptions& opts,
                     const UpdateFn& update, const GapFn& gap) {
  SolveResult out;
  IterationTrace& trace = out.trace;
  trace.has_phi = opts.reference.has_value();
  trace.has_coords = opts.record_coords;
  trace.dim = space.n;
  if (trace.has_phi) require_point(space, *opts.reference, "trace reference");

  auto should_record = [&](long n) {
    if (n <= opts.dense_until) return true;
    return opts.stride_after > 0 && n % opts.stride_after == 0;
  };
  auto record = [&](long n, const PrimalVector& x, double residual, double step,
                    bool force) {
    if (!force && !should_record(n)) return;
    if (!trace.rows.empty() && trace.rows.back().n == n) return;
    TraceRow row;
    row.n = n;
    row.lambda = fns.lambda(n);
    row.theta = fns.theta(n);
    row.residual_dual = residual;
    row.step_norm = step;
    if (trace.has_phi) row.phi_to_ref = phi_p(space, *opts.reference, x);
    if (gap) row.feasibility_gap = gap(x);
    if (trace.has_coords) row.coords = x.coords;
    trace.rows.push_back(std::move(row));
  };

  PrimalVector x = x1;
  double step_prev = 0.0;
  for (long n = 1;; ++n) {
    const DualCovector Tx = T(x);
    if (!all_finite(Tx.coords)) {
      record(n, x, std::numeric_limits<double>::quiet_NaN(), step_prev, true);
      out.report = SolveReport{SolveStatus::diverged_nonfinite, x,
                               std::numeric_limits<double>::quiet_NaN(), n, n, {}};
      return out;
    }
    const double residual = dual_norm(space, Tx);

    if (stop.tol_residual > 0.0 && residual <= stop.tol_residual) {
      record(n, x, residual, step_prev, true);
      out.report = SolveReport{SolveStatus::converged_residual, x, residual, n, -1, {}};
      return out;
    }
    if (n == stop.max_iter) {
      record(n, x, residual, step_prev, true);
      out.report = SolveReport{SolveStatus::max_iter_reached, x, residual, n, -1, {}};
      return out;
    }
    record(n, x, residual, step_prev, false);

    PrimalVector x_next = update(x, Tx, n);
    if (!all_finite(x_next.coords)) {
      record(n, x, residual, step_prev, true);
      out.report = SolveReport{SolveStatus::diverged_nonfinite, x, residual, n, n, {}};
      return out;
    }
    const double step = norm(space, x_next - x);
    if (stop.tol_step > 0.0 && step <= stop.tol_step) {
      const DualCovector Tn = T(x_next);
      const double rn = all_finite(Tn.coords) ? dual_norm(space, Tn)
                                              : std::numeric_limits<double>::quiet_NaN();
      record(n + 1, x_next, rn, step, true);
      out.report = SolveReport{SolveStatus::converged_step, x_next, rn, n + 1, -1, {}};
      return out;
    }
    x = x_next;
    step_prev = step;
  }
}

}  // namespace

StopRule::StopRule(double tol_residual_, double tol_step_, long max_iter_)
    : tol_residual(tol_residual_), tol_step(tol_step_), max_iter(max_iter_) {
  if (!(tol_residual >= 0.0) || !(tol_step >= 0.0)) {
    throw std::invalid_argument("StopRule: tolerances must be >= 0");
  }
  if (!(tol_residual > 0.0 || tol_step > 0.0)) {
    throw std::invalid_argument("StopRule: at least one tolerance must be positive");
  }
  if (max_iter < 1) {
    throw std::invalid_argument("StopRule: max_iter must be >= 1");
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged_residual: return "converged_residual";
    case SolveStatus::converged_step: return "converged_step";
    case SolveStatus::max_iter_reached: return "max_iter_reached";
    case SolveStatus::diverged_nonfinite: return "diverged_nonfinite";
  }
  return "unknown";
}

ScheduleFns schedule_fns(const PowerSchedule& schedule) {
  return ScheduleFns{[schedule](long n) { return lambda(schedule, n); },
                     [schedule](long n) { return theta(schedule, n); }};
}

SolveResult solve_zero(const SpaceSpec& space, const MonotoneOperator& T,
                       const PrimalVector& x1, const ScheduleFns& fns,
                       const StopRule& stop, const TraceOptions& opts) {
  require_point(space, x1, "solve_zero");
  const DualCovector Jx1 = duality_map(space, x1);
  auto update = [&space, &fns, &Jx1](const PrimalVector& x, const DualCovector& Tx,
                                     long n) {
    const double ln = fns.lambda(n);
    const double tn = fns.theta(n);
    const DualCovector Jx = duality_map(space, x);
    DualCovector d(Jx.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = Jx[i] - ln * (Tx[i] + tn * (Jx[i] - Jx1[i]));
    }
    return inverse_duality_map(space, d);
  };
  return run_loop(space, T, x1, fns, stop, opts, update, nullptr);
}

SolveResult solve_zero_hilbert(const SpaceSpec& space, const MonotoneOperator& T,
                               const PrimalVector& x1, const ScheduleFns& fns,
                               const StopRule& stop, const TraceOptions& opts) {
  if (!space.hilbert()) {
    throw std::invalid_argument("solve_zero_hilbert: space must have s = p = 2");
  }
  require_point(space, x1, "solve_zero_hilbert");
  // Same arithmetic shape as the dual-map kernel; with J_2 the exact identity
  // the two paths agree bit for bit, not merely to rounding.
  auto update = [&fns, &x1](const PrimalVector& x, const DualCovector& Tx, long n) {
    const double ln = fns.lambda(n);
    const double tn = fns.theta(n);
    PrimalVector next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      next[i] = x[i] - ln * (Tx[i] + tn * (x[i] - x1[i]));
    }
    return next;
  };
  return run_loop(space, T, x1, fns, stop, opts, update, nullptr);
}

SolveResult minimize(const SpaceSpec& space, const Functional& f,
                     const PrimalVector& x1, const ScheduleFns& fns,
                     const StopRule& stop, const TraceOptions& opts) {
  const MonotoneOperator T = gradient_of(space, f.value, f.gradient);
  SolveResult out = solve_zero(space, T, x1, fns, stop, opts);
  const double value = f.value(out.report.final_point);
  out.report.final_value = value;
  if (!std::isfinite(value)) {
    out.report.status = SolveStatus::diverged_nonfinite;
  }
  return out;
}

SolveResult solve_vi(const SpaceSpec& space, const MonotoneOperator& T,
                     const CyclicFamily& family, const PrimalVector& x1,
                     const ScheduleFns& fns, const StopRule& stop,
                     const TraceOptions& opts) {
  require_point(space, x1, "solve_vi");
  const std::size_t N = family.size();
  const bool hilbert = space.hilbert();
  auto update = [&](const PrimalVector& x, const DualCovector&, long n) {
    const SelfMap& member = family.members[cyclic_index(n, N) - 1];
    const double ln = fns.lambda(n);
    const double tn = fns.theta(n);
    const PrimalVector w = member(x);
    const PrimalVector anchor = member(x1);
    const DualCovector Tw = T(w);
    if (hilbert) {
      PrimalVector next(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        next[i] = w[i] - ln * (Tw[i] + tn * (w[i] - anchor[i]));
      }
      return next;
    }
    const DualCovector Jw = duality_map(space, w);
    const DualCovector Ja = duality_map(space, anchor);
    DualCovector d(Jw.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = Jw[i] - ln * (Tw[i] + tn * (Jw[i] - Ja[i]));
    }
    return inverse_duality_map(space, d);
  };
  GapFn gap = [&space, &family](const PrimalVector& x) {
    double worst = 0.0;
    for (const auto& m : family.members) {
      worst = std::max(worst, norm(space, x - m(x)));
    }
    return worst;
  };
  return run_loop(space, T, x1, fns, stop, opts, update, gap);
}

SolveResult gradient_projection(const SpaceSpec& space, const MonotoneOperator& T,
                                const ConvexSetSpec& set, const PrimalVector& x1,
                                const std::function<double(long)>& stepsize,
                                const StopRule& stop, const TraceOptions& opts) {
  if (!space.hilbert()) {
    throw std::invalid_argument("gradient_projection: space must have s = p = 2");
  }
  require_point(space, x1, "gradient_projection");
  ScheduleFns fns{stepsize, [](long) { return 0.0; }};
  auto update = [&space, &set, &stepsize](const PrimalVector& x, const DualCovector& Tx,
                                          long n) {
    const double eta = stepsize(n);
    PrimalVector moved(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) moved[i] = x[i] - eta * Tx[i];
    return project(set, moved);
  };
  return run_loop(space, T, x1, fns, stop, opts, update, nullptr);
}

ResolventResult resolvent(const SpaceSpec& space, const MonotoneOperator& T,
                          double t, const PrimalVector& x, double inner_tol,
                          long inner_max) {
  if (!(t > 0.0)) throw std::invalid_argument("resolvent: t must be > 0");
  if (!(inner_tol > 0.0)) throw std::invalid_argument("resolvent: inner_tol must be > 0");
  require_point(space, x, "resolvent");

  const DualCovector Jx = duality_map(space, x);
  auto residual_of = [&](const PrimalVector& y) {
    const DualCovector Jy = duality_map(space, y);
    const DualCovector Ty = T(y);
    DualCovector F(Jy.size());
    for (std::size_t i = 0; i < F.size(); ++i) F[i] = Jy[i] + t * Ty[i] - Jx[i];
    return F;
  };

  // Local Lipschitz probe along the first coordinate direction (unit s-norm).
  const double delta = 1e-3 * (1.0 + norm(space, x));
  PrimalVector probe = x;
  probe[0] += delta;
  const DualCovector Tp = T(probe);
  const DualCovector Tx0 = T(x);
  double L = dual_norm(space, Tp - Tx0) / delta;
  if (!std::isfinite(L)) L = 1.0;
  double beta = 1.0 / (1.0 + t * L);
  if (beta > 1.0) beta = 1.0;

  PrimalVector y = x;
  DualCovector Fy = residual_of(y);
  double r = dual_norm(space, Fy);
  long iterations = 0;
  while (r > inner_tol && iterations < inner_max) {
    ++iterations;
    const DualCovector Jy = duality_map(space, y);
    DualCovector d(Jy.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = Jy[i] - beta * Fy[i];
    const PrimalVector y_trial = inverse_duality_map(space, d);
    if (!all_finite(y_trial.coords)) {
      beta *= 0.5;
      if (beta < 1e-18) break;
      continue;
    }
    const DualCovector F_trial = residual_of(y_trial);
    const double r_trial = dual_norm(space, F_trial);
    if (std::isfinite(r_trial) && r_trial < r) {
      y = y_trial;
      Fy = F_trial;
      r = r_trial;
    } else {
      beta *= 0.5;
      if (beta < 1e-18) break;
    }
  }

  const double final_residual = dual_norm(space, residual_of(y));
  if (final_residual <= inner_tol) {
    return ResolventResult{y, t, iterations, final_residual};
  }
  std::ostringstream msg;
  msg << "resolvent: budget of " << inner_max << " trials exhausted at t = " << t
      << "; best residual " << final_residual << " > " << inner_tol;
  throw ResolventFailure(msg.str(), final_residual, iterations);
}

std::vector<PathRow> regularization_path(const SpaceSpec& space,
                                         const MonotoneOperator& T,
                                         const PrimalVector& x1,
                                         const PowerSchedule& schedule,
                                         const std::vector<long>& indices,
                                         double inner_tol, long inner_max) {
  require_point(space, x1, "regularization_path");
  if (indices.empty()) {
    throw std::invalid_argument("regularization_path: at least one index required");
  }
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || (i > 0 && indices[i] <= indices[i - 1])) {
      throw std::invalid_argument(
          "regularization_path: indices must be >= 1 and strictly increasing");
    }
  }

  const DualCovector Jx1 = duality_map(space, x1);
  std::vector<PathRow> rows;
  rows.reserve(indices.size());
  for (long n : indices) {
    const double th = theta(schedule, n);
    ResolventResult res;
    try {
      res = resolvent(space, T, 1.0 / th, x1, inner_tol, inner_max);
    } catch (const ResolventFailure& e) {
      std::ostringstream msg;
      msg << "regularization_path: step n = " << n << " failed: " << e.what();
      throw ResolventFailure(msg.str(), e.best_residual, e.iterations);
    }
    const DualCovector Jy = duality_map(space, res.y);
    const DualCovector Ty = T(res.y);
    DualCovector balance(Jy.size());
    for (std::size_t i = 0; i < balance.size(); ++i) {
      balance[i] = Ty[i] - th * (Jx1[i] - Jy[i]);
    }
    PathRow row;
    row.n = n;
    row.theta = th;
    row.y = res.y;
    row.inner_iterations = res.inner_iterations;
    row.stationarity_residual = dual_norm(space, balance);
    row.consecutive_gap = 0.0;
    row.consecutive_bound = 0.0;
    if (!rows.empty()) {
      const PathRow& prev = rows.back();
      const DualCovector Jy_prev = duality_map(space, prev.y);
      row.consecutive_gap = dual_norm(space, Jy_prev - Jy);
      row.consecutive_bound =
          (prev.theta / th - 1.0) * dual_norm(space, Jy_prev - Jx1);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<long> decades(int m) {
  if (m < 1) throw std::invalid_argument("decades: m must be >= 1");
  std::vector<long> out;
  long v = 1;
  for (int k = 0; k < m; ++k) {
    out.push_back(v);
    v *= 10;
  }
  return out;
}

}  // namespace monozero
