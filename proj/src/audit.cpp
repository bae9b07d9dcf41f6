#include "monozero/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "monozero/geometry.hpp"
#include "monozero/lp_space.hpp"
#include "monozero/operators.hpp"
#include "monozero/rng.hpp"
#include "monozero/schedules.hpp"

namespace monozero {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const int kDims[] = {1, 2, 5, 50};
const double kExponents[] = {1.5, 2.0, 3.0, 4.0};

AuditCheck duality_identities(std::uint64_t seed) {
  double worst = 0.0;
  std::string worst_at;
  for (int n : kDims) {
    for (double sp : kExponents) {
      const SpaceSpec space(n, sp, sp);
      Rng rng(seed ^ 0x1d);
      for (int k = 0; k < 50; ++k) {
        const PrimalVector x = sample_ball(rng, n, 5.0);
        const DualCovector f = duality_map(space, x);
        const double nx = norm(space, x);
        const double e1 = std::abs(pair(f, x) - std::pow(nx, space.p));
        const double e2 = std::abs(dual_norm(space, f) - std::pow(nx, space.p - 1.0));
        const double scale1 = tolerance_scale({std::pow(nx, space.p)});
        const double scale2 = tolerance_scale({std::pow(nx, space.p - 1.0)});
        const double rel = std::max(e1 / scale1, e2 / scale2);
        if (rel > worst) {
          worst = rel;
          worst_at = "n=" + std::to_string(n) + " s=p=" + fmt(sp);
        }
      }
    }
  }
  return AuditCheck{"duality_identities", worst <= 1e-9, true,
                    "pairing and norm identities; worst relative error " + fmt(worst) +
                        " at " + worst_at + " (tol 1e-9)"};
}

AuditCheck inverse_roundtrip(std::uint64_t seed) {
  double worst = 0.0;
  for (int n : kDims) {
    for (double sp : kExponents) {
      const SpaceSpec space(n, sp, sp);
      Rng rng(seed ^ 0x2e);
      for (int k = 0; k < 50; ++k) {
        const PrimalVector x = sample_ball(rng, n, 5.0);
        const PrimalVector rt = inverse_duality_map(space, duality_map(space, x));
        const double err = norm(space, rt - x) / (1.0 + norm(space, x));
        worst = std::max(worst, err);
      }
    }
  }
  return AuditCheck{"inverse_roundtrip", worst <= 1e-9, true,
                    "J^{-1}(J x) = x; worst relative error " + fmt(worst) + " (tol 1e-9)"};
}

AuditCheck phi_positivity(std::uint64_t seed) {
  double worst_neg = 0.0;
  double worst_diag = 0.0;
  for (int n : {1, 2, 5}) {
    for (double sp : kExponents) {
      const SpaceSpec space(n, sp, sp);
      Rng rng(seed ^ 0x3f);
      for (int k = 0; k < 500; ++k) {
        const PrimalVector x = sample_ball(rng, n, 5.0);
        const PrimalVector y = sample_ball(rng, n, 5.0);
        const double phi = phi_p(space, x, y);
        const double scale =
            tolerance_scale({std::pow(norm(space, x), space.p),
                             std::pow(norm(space, y), space.p)});
        worst_neg = std::min(worst_neg, phi / scale);
        worst_diag = std::max(worst_diag, std::abs(phi_p(space, x, x)) / scale);
      }
    }
  }
  const bool ok = worst_neg >= -1e-9 && worst_diag <= 1e-9;
  return AuditCheck{"phi_positivity", ok, true,
                    "phi_p >= 0 and phi_p(x,x) = 0; most negative " + fmt(worst_neg) +
                        ", worst diagonal " + fmt(worst_diag) + " (tol 1e-9)"};
}

AuditCheck phi_norm_bounds(std::uint64_t seed) {
  // Counted clauses: the lower bound for every p >= 2, and the full sandwich
  // in the Hilbert case p = 2.
  bool ok = true;
  std::string detail;
  for (double sp : {2.0, 3.0, 4.0}) {
    const SpaceSpec space(2, sp, sp);
    Rng rng(seed ^ 0x4a);
    for (int k = 0; k < 2000; ++k) {
      const PrimalVector x = sample_ball(rng, 2, 5.0);
      const PrimalVector y = sample_ball(rng, 2, 5.0);
      const PhiBounds bounds = phi_bounds_check(space, x, y);
      if (!bounds.lower_ok) {
        ok = false;
        detail = "lower bound failed at p=" + fmt(sp);
      }
      if (sp == 2.0 && !bounds.upper_ok) {
        ok = false;
        detail = "Hilbert upper bound failed";
      }
    }
  }
  if (ok) {
    detail = "| ||x||-||y|| |^p <= phi_p for p in {2,3,4}; full sandwich at p=2 "
             "(2000 samples each)";
  }
  return AuditCheck{"phi_norm_bounds", ok, true, detail};
}

AuditCheck phi_upper_bound_violation(std::uint64_t seed) {
  // Deterministic witness: phi_p(0, y) = (p-1)||y||^p exceeds (||x||+||y||)^p
  // = ||y||^p for every p > 2.  Reported, never counted.
  const SpaceSpec space(2, 3.0, 3.0);
  const PrimalVector zero{0.0, 0.0};
  const PrimalVector e1{1.0, 0.0};
  const PhiBounds witness = phi_bounds_check(space, zero, e1);
  long violations3 = 0, violations4 = 0, total = 10000;
  for (double sp : {3.0, 4.0}) {
    const SpaceSpec sweep_space(2, sp, sp);
    Rng rng(seed ^ 0x5b);
    long count = 0;
    for (long k = 0; k < total; ++k) {
      const PrimalVector x = sample_ball(rng, 2, 5.0);
      const PrimalVector y = sample_ball(rng, 2, 5.0);
      if (!phi_bounds_check(sweep_space, x, y).upper_ok) ++count;
    }
    (sp == 3.0 ? violations3 : violations4) = count;
  }
  std::ostringstream detail;
  detail << "phi_p <= (||x||+||y||)^p fails for p > 2: witness p=3, x=0, y=e1 gives "
         << "phi = " << fmt(witness.phi) << " > bound " << fmt(witness.upper)
         << "; sweep violations " << violations3 << "/" << total << " at p=3, "
         << violations4 << "/" << total << " at p=4";
  return AuditCheck{"phi_upper_bound_p_gt_2", false, false, detail.str()};
}

AuditCheck lemma_residual_sweeps(std::uint64_t seed) {
  double worst = 0.0;
  std::string worst_at;
  for (double sp : {2.0, 3.0}) {
    for (int n : {1, 2, 5}) {
      const SpaceSpec space(n, sp, sp);
      Rng rng(seed ^ 0x6c);
      for (int k = 0; k < 2000; ++k) {
        const PrimalVector x = sample_ball(rng, n, 5.0);
        const PrimalVector y = sample_ball(rng, n, 5.0);
        const PrimalVector z = sample_ball(rng, n, 5.0);
        const DualCovector xs = duality_map(space, y);
        const DualCovector ys = duality_map(space, z) - duality_map(space, y);
        const double r4 =
            lemma4_residual(space, x, xs, ys) /
            tolerance_scale({v_p(space, x, xs + ys)});
        const double r5 = lemma5_residual(space, x, y) /
                          tolerance_scale({std::pow(norm(space, x - y), space.p),
                                           std::pow(norm(space, y), space.p)});
        const double r6 = lemma6_residual(space, x, y, z) /
                          tolerance_scale({phi_p(space, y, x), phi_p(space, y, z)});
        const double m = std::min(std::min(r4, r5), r6);
        if (m < worst) {
          worst = m;
          worst_at = "p=" + fmt(sp) + " n=" + std::to_string(n);
        }
      }
    }
  }
  return AuditCheck{"lemma_residual_sweeps", worst >= -1e-9, true,
                    "three-term, supporting-hyperplane, and three-point residuals "
                    ">= 0; most negative " +
                        fmt(worst) + (worst_at.empty() ? "" : " at " + worst_at) +
                        " (tol -1e-9)"};
}

AuditCheck monotonicity_certificates(std::uint64_t seed) {
  bool ok = true;
  std::ostringstream detail;

  const SpaceSpec hilbert2(2, 2.0, 2.0);
  const MonotoneOperator G =
      linear_map(hilbert2, {8.0, -5.0, 5.0, 13.0}, DualCovector{0.0, 0.0});
  const MonotonicityCertificate cg =
      certify_strong_monotonicity(G, 2.0, 10000, 10.0, seed ^ 0x7d);
  if (!(cg.eta_hat >= 8.0 - 1e-6)) ok = false;
  detail << "linear example eta_hat = " << fmt(cg.eta_hat) << " (>= 8 - 1e-6)";

  for (double p : {2.0, 3.0, 4.0}) {
    const SpaceSpec space(5, p, p);
    const MonotoneOperator T = power_map(space);
    const MonotonicityCertificate c =
        certify_strong_monotonicity(T, p, 10000, 5.0, seed ^ 0x8e);
    const double want = std::pow(2.0, 2.0 - p);
    if (!(c.eta_hat >= want - 1e-6)) ok = false;
    detail << "; power p=" << fmt(p) << " eta_hat = " << fmt(c.eta_hat) << " (>= "
           << fmt(want) << " - 1e-6)";
  }
  return AuditCheck{"monotonicity_certificates", ok, true, detail.str()};
}

AuditCheck schedule_validation(std::uint64_t) {
  bool ok = true;
  std::string detail;
  const ScheduleReport good = validate(PowerSchedule::defaults(), 10000);
  if (!good.all_satisfied()) {
    ok = false;
    detail = "default schedule unexpectedly failed a condition";
  }
  if (good.lambda_summable.satisfied || good.conflict_chain.empty()) {
    ok = false;
    detail = "summability conflict not reported";
  }
  const ScheduleReport bad = validate(PowerSchedule(0.9, 0.8, 0.49, 0.4), 10000);
  if (bad.divergent_sum.satisfied) {
    ok = false;
    detail = "a=0.8, b=0.4 should fail the divergent-sum condition";
  }
  if (ok) {
    detail = "defaults pass all three conditions; the summability clause is "
             "reported jointly unsatisfiable; a+b > 1 fails the divergent sum";
  }
  return AuditCheck{"schedule_validation", ok, true, detail};
}

AuditCheck guard(const char* name, AuditCheck (*fn)(std::uint64_t), std::uint64_t seed) {
  try {
    return fn(seed);
  } catch (const std::exception& e) {
    return AuditCheck{name, false, true, std::string("exception: ") + e.what()};
  }
}

}  // namespace

AuditResult run_audit(std::uint64_t seed) {
  AuditResult result;
  result.checks.push_back(guard("duality_identities", duality_identities, seed));
  result.checks.push_back(guard("inverse_roundtrip", inverse_roundtrip, seed));
  result.checks.push_back(guard("phi_positivity", phi_positivity, seed));
  result.checks.push_back(guard("phi_norm_bounds", phi_norm_bounds, seed));
  result.checks.push_back(guard("phi_upper_bound_p_gt_2", phi_upper_bound_violation, seed));
  result.checks.push_back(guard("lemma_residual_sweeps", lemma_residual_sweeps, seed));
  result.checks.push_back(guard("monotonicity_certificates", monotonicity_certificates, seed));
  result.checks.push_back(guard("schedule_validation", schedule_validation, seed));
  for (const auto& check : result.checks) {
    if (!check.counted) continue;
    ++result.counted_total;
    if (check.passed) ++result.counted_passed;
  }
  result.ok = result.counted_passed == result.counted_total;
  return result;
}

void print_audit(const AuditResult& result, std::ostream& out) {
  for (const auto& check : result.checks) {
    const char* tag = !check.counted ? "known-violation" : (check.passed ? "pass" : "FAIL");
    out << "[" << tag << "] " << check.name << ": " << check.detail << "\n";
  }
  out << "audit: " << result.counted_passed << "/" << result.counted_total
      << " counted checks passed" << (result.ok ? "" : " -- FAILED") << "\n";
}

}  // namespace monozero
