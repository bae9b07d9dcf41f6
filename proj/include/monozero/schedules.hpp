#pragma once

// Power-law step and regularization sequences lambda_n = lambda0 * n^{-a},
// theta_n = theta0 * n^{-b}, and the validator for the conditions the
// convergence guarantee needs.

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace monozero {

// Constructor enforces lambda0 in (0,1), a >= 0, theta0 in (0,1/2), b > 0.
struct PowerSchedule {
  double lambda0;
  double a;
  double theta0;
  double b;

  PowerSchedule(double lambda0_, double a_, double theta0_, double b_);

  static PowerSchedule defaults() { return PowerSchedule(0.9, 0.5, 0.49, 0.25); }
};

double lambda(const PowerSchedule& schedule, long n);
double theta(const PowerSchedule& schedule, long n);

struct ConditionVerdict {
  bool satisfied;
  std::string formula;  // the test actually applied
  long horizon;
  std::string evidence;
};

struct ScheduleReport {
  ConditionVerdict range;            // lambda_n in (0,1), theta_n in (0,1/2) decreasing to 0
  ConditionVerdict divergent_sum;    // sum lambda_n theta_n = infinity
  ConditionVerdict ratio_limit;      // ((theta_{n-1}/theta_n)-1)/(lambda_n theta_n) -> 0
  ConditionVerdict lambda_summable;  // sum lambda_n < infinity; never satisfiable alongside divergent_sum
  std::string conflict_chain;        // the inequality chain behind lambda_summable
  std::vector<std::pair<long, double>> partial_sums;  // running sum lambda_k theta_k at checkpoints
  std::vector<std::pair<long, double>> ratio_samples;

  bool all_satisfied() const {
    return range.satisfied && divergent_sum.satisfied && ratio_limit.satisfied;
  }
};

// Analytic verdicts for power schedules (divergent_sum iff a+b <= 1,
// ratio_limit iff a+b < 1), numeric evidence tables to the horizon.
// The lambda_summable verdict is always unsatisfied: together with
// theta_n < 1/2 it contradicts divergent_sum, and conflict_chain spells
// out the inequality.  Requires horizon >= 10.
ScheduleReport validate(const PowerSchedule& schedule, long horizon);

// Numeric-evidence variant for arbitrary callable sequences.  Divergence
// verdicts come from log-log slope fits at checkpoints; evidence, not proof.
ScheduleReport validate_callable(const std::function<double(long)>& lambda_fn,
                                 const std::function<double(long)>& theta_fn,
                                 long horizon);

std::string format_report(const ScheduleReport& report);

}  // namespace monozero
