// Acceptance gate: ten numbered criteria, one pass/fail line each, nonzero
// exit when any fail.  Criteria 2 and 4 contain clauses that are genuinely
// unattainable as stated; they run faithfully and report the measured facts
// rather than being weakened (see README, "Known failing criteria").

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "monozero/audit.hpp"
#include "monozero/geometry.hpp"
#include "monozero/oracle.hpp"
#include "monozero/rng.hpp"
#include "monozero/schedules.hpp"
#include "monozero/solver.hpp"
#include "monozero/trace_io.hpp"

using namespace monozero;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s - %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

MonotoneOperator stiff_skew_map(const SpaceSpec& space) {
  return linear_map(space, {8.0, -5.0, 5.0, 13.0}, DualCovector(std::size_t{2}));
}

// 1: duality pairing and norm identities plus the exact inverse, across dims
// and exponents, inside the stated runtime budget.
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_identity = 0.0;
  double worst_roundtrip = 0.0;
  for (int n : {1, 2, 5, 50}) {
    for (double sp : {1.5, 2.0, 3.0, 4.0}) {
      SpaceSpec space(n, sp, sp);
      Rng rng(1234567u + static_cast<std::uint64_t>(n));
      for (int rep = 0; rep < 250; ++rep) {
        PrimalVector x = sample_ball(rng, n, 5.0);
        const double nx = norm(space, x);
        if (nx == 0.0) continue;
        DualCovector jx = duality_map(space, x);
        const double want_pair = std::pow(nx, sp);
        const double want_dual = std::pow(nx, sp - 1.0);
        worst_identity = std::max(
            worst_identity, std::abs(pair(jx, x) - want_pair) / (1.0 + want_pair));
        worst_identity = std::max(
            worst_identity,
            std::abs(dual_norm(space, jx) - want_dual) / (1.0 + want_dual));
        PrimalVector back = inverse_duality_map(space, jx);
        for (std::size_t i = 0; i < x.size(); ++i) {
          worst_roundtrip = std::max(
              worst_roundtrip, std::abs(back[i] - x[i]) / (1.0 + std::abs(x[i])));
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = worst_identity <= 1e-9 && worst_roundtrip <= 1e-9 && secs < 5.0;
  report(1, pass,
         "identity error " + fmt(worst_identity) + ", roundtrip error " +
             fmt(worst_roundtrip) + " (tol 1e-9), " + fmt(secs) + " s (budget 5 s)");
}

// 2: three-lemma residual sweeps plus the two-sided norm sandwich.  The
// sandwich upper bound provably fails for p > 2 and the sweep measures it.
void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  double most_negative = 0.0;
  for (double sp : {2.0, 3.0}) {
    for (int n : {1, 2, 5}) {
      SpaceSpec space(n, sp, sp);
      Rng rng(24680u + n);
      for (int rep = 0; rep < 10000; ++rep) {
        PrimalVector x = sample_ball(rng, n, 3.0);
        PrimalVector y = sample_ball(rng, n, 3.0);
        PrimalVector z = sample_ball(rng, n, 3.0);
        DualCovector xstar(sample_ball(rng, n, 3.0).coords);
        DualCovector ystar(sample_ball(rng, n, 3.0).coords);
        const double scale = tolerance_scale(
            {std::pow(norm(space, x), sp), std::pow(norm(space, y), sp),
             std::pow(norm(space, z), sp),
             std::pow(dual_norm(space, xstar), space.q),
             std::pow(dual_norm(space, ystar), space.q)});
        most_negative = std::min(
            most_negative, lemma4_residual(space, x, xstar, ystar) / scale);
        most_negative = std::min(most_negative, lemma5_residual(space, x, y) / scale);
        most_negative =
            std::min(most_negative, lemma6_residual(space, x, y, z) / scale);
      }
    }
  }
  const bool lemmas_ok = most_negative >= -1e-9;

  long violations3 = 0, violations4 = 0;
  bool lower_ok = true;
  for (double sp : {2.0, 3.0, 4.0}) {
    SpaceSpec space(3, sp, sp);
    Rng rng(13579u);
    long* count = (sp == 3.0) ? &violations3 : (sp == 4.0) ? &violations4 : nullptr;
    for (int rep = 0; rep < 10000; ++rep) {
      PhiBounds b = phi_bounds_check(space, sample_ball(rng, 3, 4.0),
                                     sample_ball(rng, 3, 4.0));
      lower_ok = lower_ok && b.lower_ok;
      if (!b.upper_ok && count) ++(*count);
    }
  }
  const bool sandwich_ok = lower_ok && violations3 == 0 && violations4 == 0;
  const double secs = seconds_since(t0);

  std::string detail = "lemma residuals most negative " + fmt(most_negative) +
                       " (tol -1e-9), lower bound " +
                       std::string(lower_ok ? "holds" : "VIOLATED");
  if (!sandwich_ok) {
    detail += "; upper bound fails for p > 2 as it must: phi_p(0, e1) = p - 1 "
              "exceeds the bound 1 (p=3 witness gives 2 > 1); sweep violations " +
              std::to_string(violations3) + "/10000 at p=3, " +
              std::to_string(violations4) + "/10000 at p=4; the full sandwich "
              "holds only at p=2";
  }
  detail += "; " + fmt(secs) + " s (budget 30 s)";
  report(2, lemmas_ok && sandwich_ok && secs < 30.0, detail);
}

// 3: empirical strong-monotonicity certificates for both built-in examples.
void criterion3() {
  SpaceSpec hilbert(2, 2.0, 2.0);
  MonotonicityCertificate linear_cert =
      certify_strong_monotonicity(stiff_skew_map(hilbert), 2.0, 10000, 10.0, 1234567u);
  bool pass = linear_cert.eta_hat >= 8.0 - 1e-6;
  std::string detail = "linear example eta_hat " + fmt(linear_cert.eta_hat) + " (>= 8)";
  for (double p : {2.0, 3.0, 4.0}) {
    SpaceSpec space(5, p, p);
    MonotonicityCertificate c =
        certify_strong_monotonicity(power_map(space), p, 10000, 5.0, 1234567u);
    const double want = std::pow(2.0, 2.0 - p);
    pass = pass && c.eta_hat >= want - 1e-6;
    detail += ", power p=" + fmt(p) + " eta_hat " + fmt(c.eta_hat) + " (>= " +
              fmt(want) + ")";
  }
  report(3, pass, detail);
}

// 4: Hilbert convergence to 1e-4 under the default schedule within 2e5
// iterations.  The anchored update stalls at a regularization floor tied to
// theta_n, so the target is out of reach by construction; measured honestly.
void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  SpaceSpec space(2, 2.0, 2.0);
  SolveResult r = solve_zero_hilbert(space, stiff_skew_map(space),
                                     PrimalVector{10.0, -10.0},
                                     PowerSchedule::defaults(),
                                     StopRule(1e-30, 0.0, 200000));
  const double final_norm = norm(space, r.report.final_point);
  const double secs = seconds_since(t0);
  const bool pass = final_norm <= 1e-4 && secs < 10.0;
  std::string detail = "final norm " + fmt(final_norm) + " after 2e5 iterations, " +
                       fmt(secs) + " s";
  if (!pass) {
    // stationary point of the update at frozen theta: x = theta (G + theta I)^{-1} x1,
    // norm ~ theta * 1.18; theta_n = 0.49 n^{-1/4} reaches the needed 8.5e-5
    // only near n = 1.1e15
    detail += "; the iterate tracks the regularization floor theta_n*(G+theta_n)^{-1}x1 "
              "(norm ~ 1.18*theta_n), and theta_200000 = 0.0232 puts the floor near "
              "2.7e-2; reaching 1e-4 under the default schedule needs about 1.1e15 "
              "iterations";
  }
  report(4, pass, detail);
}

// 5: Banach convergence for the cubic power map plus exact agreement of the
// general kernel with the direct Hilbert form.
void criterion5() {
  SpaceSpec cubic(5, 3.0, 3.0);
  SolveResult r = solve_zero(cubic, power_map(cubic),
                             PrimalVector{1.0, 1.0, 1.0, 1.0, 1.0},
                             PowerSchedule(0.9, 0.09, 0.05, 0.90),
                             StopRule(1e-30, 0.0, 1000000));
  const double final_norm = norm(cubic, r.report.final_point);
  bool pass = final_norm <= 1e-3;
  std::string detail = "cubic power map final norm " + fmt(final_norm) +
                       " (tol 1e-3) in 1e6 iterations";

  SpaceSpec hilbert(2, 2.0, 2.0);
  TraceOptions opts;
  opts.record_coords = true;
  StopRule stop(1e-30, 0.0, 1000);
  SolveResult general = solve_zero(hilbert, stiff_skew_map(hilbert),
                                   PrimalVector{10.0, -10.0},
                                   PowerSchedule::defaults(), stop, opts);
  SolveResult direct = solve_zero_hilbert(hilbert, stiff_skew_map(hilbert),
                                          PrimalVector{10.0, -10.0},
                                          PowerSchedule::defaults(), stop, opts);
  double worst_step = 0.0;
  const bool aligned = general.trace.rows.size() == direct.trace.rows.size() &&
                       !general.trace.rows.empty();
  for (std::size_t i = 0; aligned && i < general.trace.rows.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      worst_step = std::max(worst_step,
                            std::abs(general.trace.rows[i].coords[j] -
                                     direct.trace.rows[i].coords[j]));
    }
  }
  pass = pass && aligned && worst_step <= 1e-10;
  detail += "; kernel agreement over 1e3 Hilbert steps " + fmt(worst_step) +
            " (tol 1e-10)";
  report(5, pass, detail);
}

// 6: minimization of the quartic against an independent Newton oracle, and
// the finite-difference cross-check of the analytic gradient.
void criterion6() {
  SpaceSpec space(2, 2.0, 2.0);
  Functional f = quartic_functional(PrimalVector{1.0, -2.0});
  OracleSolution oracle = oracle_zero(gradient_of(space, f.value, f.gradient),
                                      {PrimalVector{0.0, 0.0}, 10.0}, 1e-10);
  SolveResult r = minimize(space, f, PrimalVector{0.0, 0.0},
                           PowerSchedule(0.2, 0.3, 0.49, 0.6),
                           StopRule(1e-30, 0.0, 1000000));
  const double gap = norm(space, r.report.final_point - oracle.point);
  bool pass = gap <= 1e-3;

  MonotoneOperator analytic = gradient_of(space, f.value, f.gradient);
  MonotoneOperator numeric = gradient_of(space, f.value);
  Rng rng(1234567u);
  double worst_fd = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    PrimalVector x = sample_ball(rng, 2, 3.0);
    DualCovector ga = analytic(x);
    DualCovector gn = numeric(x);
    for (std::size_t i = 0; i < 2; ++i) {
      worst_fd = std::max(worst_fd,
                          std::abs(ga[i] - gn[i]) / (1.0 + std::abs(ga[i])));
    }
  }
  pass = pass && worst_fd <= 1e-5;
  report(6, pass,
         "distance to Newton oracle " + fmt(gap) +
             " (tol 1e-3), gradient finite-difference error " + fmt(worst_fd) +
             " (tol 1e-5)");
}

// 7: the variational-inequality driver on a box and on a two-set cyclic
// family, with the projected-gradient baseline agreeing; table printed.
void criterion7() {
  SpaceSpec space(2, 2.0, 2.0);
  const PowerSchedule schedule(0.9, 0.6, 0.49, 0.25);
  const StopRule stop(1e-30, 0.0, 1000000);

  MonotoneOperator shift_both =
      linear_map(space, {1.0, 0.0, 0.0, 1.0}, DualCovector{2.0, 2.0});
  std::vector<ConvexSetSpec> box = {make_box(space, {0.0, 0.0}, {1.0, 1.0})};
  OracleSolution box_oracle = oracle_vi(shift_both, box, PrimalVector{0.0, 0.0}, 1e-8);
  CyclicFamily box_family = make_projection_family(box, PrimalVector{0.0, 0.0});
  SolveResult vi_box = solve_vi(space, shift_both, box_family, PrimalVector{0.0, 0.0},
                                schedule, stop);
  const double box_gap = norm(space, vi_box.report.final_point - box_oracle.point);

  SolveResult gp = gradient_projection(space, shift_both, box[0],
                                       PrimalVector{0.0, 0.0},
                                       [](long) { return 0.5; }, stop);
  const double gp_gap = norm(space, gp.report.final_point - box_oracle.point);

  MonotoneOperator shift_x =
      linear_map(space, {1.0, 0.0, 0.0, 1.0}, DualCovector{2.0, 0.0});
  std::vector<ConvexSetSpec> two = {
      make_ball(space, PrimalVector{0.0, 0.0}, 1.0),
      make_halfspace(space, {1.0, 0.0}, 0.5),
  };
  OracleSolution two_oracle = oracle_vi(shift_x, two, PrimalVector{0.0, 0.0}, 1e-8);
  CyclicFamily two_family = make_projection_family(two, PrimalVector{0.0, 0.0});
  SolveResult vi_two = solve_vi(space, shift_x, two_family, PrimalVector{0.0, 0.0},
                                schedule, stop);
  const double two_gap = norm(space, vi_two.report.final_point - two_oracle.point);

  const bool pass = box_gap <= 1e-3 && two_gap <= 1e-3 && gp_gap <= 1e-3;
  report(7, pass,
         "box gap " + fmt(box_gap) + ", two-set gap " + fmt(two_gap) +
             ", projected-gradient gap " + fmt(gp_gap) + " (tol 1e-3 each)");
  std::printf("  method                iterations  final point              gap\n");
  auto row = [&](const char* name, const SolveResult& r, double gap) {
    std::printf("  %-20s %10ld  (%.6f, %.6f)  %.2e\n", name, r.report.iterations,
                r.report.final_point[0], r.report.final_point[1], gap);
  };
  row("anchored cyclic, box", vi_box, box_gap);
  row("projected gradient", gp, gp_gap);
  row("anchored cyclic, two", vi_two, two_gap);
}

// 8: resolvent residuals, the closed-form cross-check, and the shape of the
// regularization path along decade indices.
void criterion8() {
  SpaceSpec space(2, 2.0, 2.0);
  MonotoneOperator T = stiff_skew_map(space);
  const PowerSchedule d = PowerSchedule::defaults();

  double worst_residual = 0.0;
  double worst_cross = 0.0;
  bool decreasing = true;
  bool stationarity_ok = true;
  bool consecutive_ok = true;

  std::vector<PathRow> rows = regularization_path(space, T, PrimalVector{10.0, -10.0},
                                                  d, decades(6), 1e-10);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const PathRow& row = rows[i];
    const double t = 1.0 / row.theta;
    // independent residual check of J y + t T y = J x1
    DualCovector defect = duality_map(space, row.y) + t * T(row.y) -
                          duality_map(space, PrimalVector{10.0, -10.0});
    worst_residual = std::max(worst_residual, dual_norm(space, defect));
    // dense closed-form solve of (I + tG) y = x1 for the 2x2 case
    const double a11 = 1.0 + t * 8.0, a12 = -t * 5.0;
    const double a21 = t * 5.0, a22 = 1.0 + t * 13.0;
    const double det = a11 * a22 - a12 * a21;
    const double y0 = (a22 * 10.0 - a12 * -10.0) / det;
    const double y1 = (-a21 * 10.0 + a11 * -10.0) / det;
    worst_cross = std::max(worst_cross, std::hypot(row.y[0] - y0, row.y[1] - y1));
    if (i > 0) {
      if (!(norm(space, row.y) < norm(space, rows[i - 1].y))) decreasing = false;
      if (!(row.consecutive_gap <= row.consecutive_bound + 1e-6)) consecutive_ok = false;
    }
    if (!(row.stationarity_residual <= 1e-6 * (1.0 + 1.0 / row.theta))) {
      stationarity_ok = false;
    }
  }

  // the cubic-space resolvent exercises the non-identity duality map
  SpaceSpec cubic(2, 3.0, 3.0);
  ResolventResult rc = resolvent(cubic, power_map(cubic), 0.5,
                                 PrimalVector{1.0, -2.0}, 1e-10);
  worst_residual = std::max(worst_residual, rc.residual);

  const bool pass = worst_residual <= 1e-8 && worst_cross <= 1e-8 && decreasing &&
                    stationarity_ok && consecutive_ok;
  report(8, pass,
         "resolvent residual " + fmt(worst_residual) +
             " (tol 1e-8), closed-form gap " + fmt(worst_cross) +
             " (tol 1e-8), path norms " +
             (decreasing ? "strictly decreasing" : "NOT decreasing") +
             ", stationarity " + (stationarity_ok ? "within" : "OUTSIDE") +
             " 1e-6*(1+1/theta), consecutive diagnostic " +
             (consecutive_ok ? "within bound" : "OUTSIDE bound"));
}

// 9: the schedule validator's three verdicts, the printed unsatisfiability
// chain, and rejection of too-fast joint decay.
void criterion9() {
  ScheduleReport good = validate(PowerSchedule::defaults(), 100000);
  ScheduleReport bad = validate(PowerSchedule(0.9, 0.8, 0.49, 0.4), 100000);
  const bool chain_present =
      good.conflict_chain.find("jointly unsatisfiable") != std::string::npos &&
      !good.lambda_summable.satisfied;
  const bool pass = good.range.satisfied && good.divergent_sum.satisfied &&
                    good.ratio_limit.satisfied && chain_present &&
                    bad.range.satisfied && !bad.divergent_sum.satisfied;
  report(9, pass,
         std::string("defaults: range/divergent-sum/ratio all pass; ") +
             "summability clause reported unsatisfiable with the inequality chain; "
             "a=0.8, b=0.4 rejected by the divergent-sum test");
  std::printf("  chain: %s\n", good.conflict_chain.c_str());
}

// 10: two CLI runs of one config produce byte-identical trace files.
void criterion10() {
  const char* config_text = R"({
  "kind": "zero",
  "space": {"n": 2, "s": 2, "p": 2},
  "operator": {"builtin": "linear", "matrix": [8, -5, 5, 13]},
  "x1": [10, -10],
  "stop": {"tol_residual": 1e-30, "max_iter": 2000},
  "output": {"trace": "det_trace.csv", "record_coords": true}
})";
  write_text_file("acceptance_det.json", config_text);
  const std::string cli = MONOZERO_CLI_PATH;
  int rc1 = std::system((cli + " solve --config acceptance_det.json --out acc_det_a"
                               " > /dev/null 2>&1").c_str());
  int rc2 = std::system((cli + " solve --config acceptance_det.json --out acc_det_b"
                               " > /dev/null 2>&1").c_str());
  auto slurp = [](const char* path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string a = slurp("acc_det_a/det_trace.csv");
  const std::string b = slurp("acc_det_b/det_trace.csv");
  const bool ran = rc1 != -1 && rc2 != -1;
  const bool pass = ran && !a.empty() && a == b;
  report(10, pass,
         pass ? "two runs, " + std::to_string(a.size()) + " bytes each, byte-identical"
              : "trace files differ or the runs failed");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
