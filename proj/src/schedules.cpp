#include "monozero/schedules.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace monozero {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Logarithmically spaced checkpoints 1 = n_0 < n_1 < ... <= horizon,
// horizon always included.
std::vector<long> checkpoints(long horizon) {
  std::vector<long> pts;
  long n = 1;
  while (n < horizon) {
    pts.push_back(n);
    long next = static_cast<long>(n * 1.5) + 1;
    n = next;
  }
  pts.push_back(horizon);
  return pts;
}

const char* kConflictChain =
    "theta_n < 1/2 for all n, so sum lambda_n*theta_n <= (1/2) sum lambda_n; "
    "a divergent sum lambda_n*theta_n therefore forces sum lambda_n = infinity, "
    "which contradicts sum lambda_n < infinity.  The two requirements are "
    "jointly unsatisfiable; this validator checks the divergent-sum condition "
    "and drops the summability clause.";

}  // namespace

PowerSchedule::PowerSchedule(double lambda0_, double a_, double theta0_, double b_)
    : lambda0(lambda0_), a(a_), theta0(theta0_), b(b_) {
  if (!(lambda0 > 0.0 && lambda0 < 1.0)) {
    throw std::invalid_argument("PowerSchedule: lambda0 must lie in (0,1)");
  }
  if (!(a >= 0.0)) {
    throw std::invalid_argument("PowerSchedule: a must be >= 0");
  }
  if (!(theta0 > 0.0 && theta0 < 0.5)) {
    throw std::invalid_argument("PowerSchedule: theta0 must lie in (0,1/2)");
  }
  if (!(b > 0.0)) {
    throw std::invalid_argument(
        "PowerSchedule: b must be > 0 (theta_n must strictly decrease to 0)");
  }
}

double lambda(const PowerSchedule& schedule, long n) {
  if (n < 1) throw std::invalid_argument("lambda: n must be >= 1");
  return schedule.lambda0 * std::pow(static_cast<double>(n), -schedule.a);
}

double theta(const PowerSchedule& schedule, long n) {
  if (n < 1) throw std::invalid_argument("theta: n must be >= 1");
  return schedule.theta0 * std::pow(static_cast<double>(n), -schedule.b);
}

ScheduleReport validate(const PowerSchedule& schedule, long horizon) {
  if (horizon < 10) throw std::invalid_argument("validate: horizon must be >= 10");

  ScheduleReport report;
  const auto pts = checkpoints(horizon);

  double running = 0.0;
  long next_pt = 0;
  for (long n = 1; n <= horizon; ++n) {
    running += lambda(schedule, n) * theta(schedule, n);
    if (next_pt < static_cast<long>(pts.size()) && n == pts[static_cast<std::size_t>(next_pt)]) {
      report.partial_sums.emplace_back(n, running);
      ++next_pt;
    }
  }
  for (long n : pts) {
    if (n < 2) continue;
    const double ratio = (theta(schedule, n - 1) / theta(schedule, n) - 1.0) /
                         (lambda(schedule, n) * theta(schedule, n));
    report.ratio_samples.emplace_back(n, ratio);
  }

  report.range = ConditionVerdict{
      schedule.b > 0.0 && schedule.theta0 < 0.5 && schedule.lambda0 < 1.0,
      "lambda0 in (0,1), a >= 0, theta0 in (0,1/2), b > 0 (constructor-enforced)",
      horizon,
      "theta_1 = " + fmt(theta(schedule, 1)) + ", theta_" + std::to_string(horizon) +
          " = " + fmt(theta(schedule, horizon)) + ", strictly decreasing"};

  const double apb = schedule.a + schedule.b;
  report.divergent_sum = ConditionVerdict{
      apb <= 1.0,
      "sum n^{-(a+b)} diverges iff a+b <= 1; a+b = " + fmt(apb),
      horizon,
      "partial sum at horizon = " + fmt(report.partial_sums.back().second)};

  // (theta_{n-1}/theta_n - 1)/(lambda_n theta_n) ~ (b/n) * n^{a+b}/(lambda0 theta0),
  // which vanishes iff a+b < 1.
  report.ratio_limit = ConditionVerdict{
      apb < 1.0,
      "ratio ~ (b/(lambda0*theta0)) * n^{a+b-1} -> 0 iff a+b < 1; a+b = " + fmt(apb),
      horizon,
      "ratio at horizon = " + fmt(report.ratio_samples.back().second)};

  report.lambda_summable = ConditionVerdict{
      false, "sum lambda_n < infinity: jointly unsatisfiable with the divergent-sum condition",
      horizon, "see conflict chain"};
  report.conflict_chain = kConflictChain;
  return report;
}

ScheduleReport validate_callable(const std::function<double(long)>& lambda_fn,
                                 const std::function<double(long)>& theta_fn,
                                 long horizon) {
  if (horizon < 10) throw std::invalid_argument("validate_callable: horizon must be >= 10");

  ScheduleReport report;
  const auto pts = checkpoints(horizon);

  bool range_ok = true;
  double prev_theta = theta_fn(1);
  if (!(prev_theta > 0.0 && prev_theta < 0.5)) range_ok = false;
  {
    const double l1 = lambda_fn(1);
    if (!(l1 > 0.0 && l1 < 1.0)) range_ok = false;
  }
  double running = 0.0;
  long next_pt = 0;
  for (long n = 1; n <= horizon; ++n) {
    const double ln = lambda_fn(n);
    const double tn = theta_fn(n);
    if (!(ln > 0.0 && ln < 1.0 && tn > 0.0 && tn < 0.5)) range_ok = false;
    if (n > 1 && !(tn < prev_theta)) range_ok = false;
    if (n > 1) prev_theta = tn;
    running += ln * tn;
    if (next_pt < static_cast<long>(pts.size()) && n == pts[static_cast<std::size_t>(next_pt)]) {
      report.partial_sums.emplace_back(n, running);
      ++next_pt;
    }
  }
  for (long n : pts) {
    if (n < 2) continue;
    const double ratio =
        (theta_fn(n - 1) / theta_fn(n) - 1.0) / (lambda_fn(n) * theta_fn(n));
    report.ratio_samples.emplace_back(n, ratio);
  }

  report.range = ConditionVerdict{
      range_ok, "sampled: lambda_n in (0,1), theta_n in (0,1/2) strictly decreasing",
      horizon, "checked at every n <= horizon"};

  // Slope of log(lambda_n theta_n) between the last two decade-scale
  // checkpoints; the sum diverges when the decay exponent is >= -1.
  const auto& ps = report.partial_sums;
  const std::size_t m = ps.size();
  double slope = 0.0;
  if (m >= 2) {
    const long n1 = ps[m / 2].first, n2 = ps[m - 1].first;
    const double t1 = lambda_fn(n1) * theta_fn(n1);
    const double t2 = lambda_fn(n2) * theta_fn(n2);
    slope = std::log(t2 / t1) / std::log(static_cast<double>(n2) / n1);
  }
  report.divergent_sum = ConditionVerdict{
      slope >= -1.0 - 1e-9,
      "fitted decay exponent of lambda_n*theta_n >= -1 (numeric evidence, not proof); "
      "fitted exponent = " + fmt(slope),
      horizon, "partial sum at horizon = " + fmt(running)};

  bool ratio_decreasing = true;
  const auto& rs = report.ratio_samples;
  for (std::size_t i = 1; i < rs.size(); ++i) {
    if (!(rs[i].second < rs[i - 1].second)) ratio_decreasing = false;
  }
  const bool ratio_shrinks =
      !rs.empty() && rs.back().second <= 0.9 * rs.front().second;
  report.ratio_limit = ConditionVerdict{
      ratio_decreasing && ratio_shrinks,
      "sampled ratio strictly decreasing with final <= 0.9 * initial "
      "(numeric evidence, not proof)",
      horizon,
      rs.empty() ? std::string("no samples")
                 : "first = " + fmt(rs.front().second) + ", last = " + fmt(rs.back().second)};

  report.lambda_summable = ConditionVerdict{
      false, "sum lambda_n < infinity: jointly unsatisfiable with the divergent-sum condition",
      horizon, "see conflict chain"};
  report.conflict_chain = kConflictChain;
  return report;
}

std::string format_report(const ScheduleReport& report) {
  std::ostringstream out;
  auto line = [&out](const char* name, const ConditionVerdict& v) {
    out << "  [" << (v.satisfied ? "pass" : "FAIL") << "] " << name << ": " << v.formula
        << " (horizon " << v.horizon << "; " << v.evidence << ")\n";
  };
  out << "schedule conditions:\n";
  line("range/monotonicity", report.range);
  line("divergent sum lambda*theta", report.divergent_sum);
  line("vanishing ratio", report.ratio_limit);
  out << "  [unsatisfiable] " << report.lambda_summable.formula << "\n";
  out << "      " << report.conflict_chain << "\n";
  out << "  partial sums of lambda_n*theta_n:";
  for (const auto& [n, s] : report.partial_sums) {
    out << " (" << n << ", " << fmt(s) << ")";
  }
  out << "\n  ratio samples:";
  for (const auto& [n, r] : report.ratio_samples) {
    out << " (" << n << ", " << fmt(r) << ")";
  }
  out << "\n";
  return out.str();
}

}  // namespace monozero
