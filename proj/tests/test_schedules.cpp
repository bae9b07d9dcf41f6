#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "monozero/schedules.hpp"

using namespace monozero;

TEST_CASE("power schedule evaluation") {
  PowerSchedule d = PowerSchedule::defaults();
  CHECK(lambda(d, 1) == doctest::Approx(0.9));
  CHECK(theta(d, 1) == doctest::Approx(0.49));
  CHECK(lambda(PowerSchedule(0.9, 0.5, 0.49, 0.25), 4) == doctest::Approx(0.45));
  CHECK(theta(PowerSchedule(0.9, 0.5, 0.4, 1.0), 4) == doctest::Approx(0.1));
  CHECK_THROWS_AS(lambda(d, 0), std::invalid_argument);
  CHECK_THROWS_AS(theta(d, -3), std::invalid_argument);
}

TEST_CASE("power schedule parameter ranges") {
  CHECK_THROWS_AS(PowerSchedule(0.0, 0.5, 0.49, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(PowerSchedule(1.0, 0.5, 0.49, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(PowerSchedule(0.9, -0.1, 0.49, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(PowerSchedule(0.9, 0.5, 0.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(PowerSchedule(0.9, 0.5, 0.0, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(PowerSchedule(0.9, 0.5, 0.49, 0.0), std::invalid_argument);
}

TEST_CASE("theta decreases toward zero along the defaults") {
  PowerSchedule d = PowerSchedule::defaults();
  double prev = theta(d, 1);
  for (long n = 10; n <= 1000000; n *= 10) {
    const double t = theta(d, n);
    CHECK(t < prev);
    CHECK(t > 0.0);
    prev = t;
  }
  CHECK(theta(d, 1000000) < 0.02);
}

TEST_CASE("validator verdicts for the defaults") {
  ScheduleReport report = validate(PowerSchedule::defaults(), 100000);
  CHECK(report.range.satisfied);
  CHECK(report.divergent_sum.satisfied);   // a + b = 0.75 <= 1
  CHECK(report.ratio_limit.satisfied);     // a + b < 1
  CHECK(!report.lambda_summable.satisfied);
  CHECK(report.all_satisfied());
  CHECK(report.conflict_chain.find("jointly unsatisfiable") != std::string::npos);
  CHECK(!report.partial_sums.empty());
  CHECK(!report.ratio_samples.empty());
  // the running sum grows between checkpoints
  CHECK(report.partial_sums.back().second > report.partial_sums.front().second);
  // the correction ratio shrinks along the defaults
  CHECK(report.ratio_samples.back().second < report.ratio_samples.front().second);
}

TEST_CASE("validator rejects fast joint decay") {
  // a + b = 1.2 > 1: the weighted sum converges
  ScheduleReport report = validate(PowerSchedule(0.9, 0.8, 0.49, 0.4), 100000);
  CHECK(report.range.satisfied);
  CHECK(!report.divergent_sum.satisfied);
  CHECK(!report.all_satisfied());
}

TEST_CASE("validator rejects the boundary ratio case") {
  // a + b = 1: the weighted sum still diverges but the ratio does not vanish
  ScheduleReport report = validate(PowerSchedule(0.9, 0.0, 0.49, 1.0), 100000);
  CHECK(report.range.satisfied);
  CHECK(report.divergent_sum.satisfied);
  CHECK(!report.ratio_limit.satisfied);
  CHECK(!report.all_satisfied());
}

TEST_CASE("validator horizon precondition") {
  CHECK_THROWS_AS(validate(PowerSchedule::defaults(), 5), std::invalid_argument);
}

TEST_CASE("validator determinism") {
  ScheduleReport a = validate(PowerSchedule::defaults(), 50000);
  ScheduleReport b = validate(PowerSchedule::defaults(), 50000);
  REQUIRE(a.partial_sums.size() == b.partial_sums.size());
  for (std::size_t i = 0; i < a.partial_sums.size(); ++i) {
    CHECK(a.partial_sums[i].first == b.partial_sums[i].first);
    CHECK(a.partial_sums[i].second == b.partial_sums[i].second);
  }
}

TEST_CASE("callable validator agrees with the analytic one on power laws") {
  PowerSchedule d = PowerSchedule::defaults();
  ScheduleReport numeric = validate_callable(
      [d](long n) { return lambda(d, n); }, [d](long n) { return theta(d, n); }, 200000);
  CHECK(numeric.range.satisfied);
  CHECK(numeric.divergent_sum.satisfied);
  CHECK(numeric.ratio_limit.satisfied);

  PowerSchedule fast(0.9, 0.8, 0.49, 0.4);
  ScheduleReport no = validate_callable(
      [fast](long n) { return lambda(fast, n); }, [fast](long n) { return theta(fast, n); },
      200000);
  CHECK(!no.divergent_sum.satisfied);
}

TEST_CASE("callable validator flags range violations") {
  // theta stuck at a constant never decreases to zero
  ScheduleReport report = validate_callable([](long) { return 0.5; },
                                            [](long) { return 0.25; }, 1000);
  CHECK(!report.range.satisfied);
}

TEST_CASE("report formatting names every verdict") {
  std::string text = format_report(validate(PowerSchedule::defaults(), 10000));
  CHECK(text.find("[pass]") != std::string::npos);
  CHECK(text.find("[unsatisfiable]") != std::string::npos);
  std::string bad = format_report(validate(PowerSchedule(0.9, 0.8, 0.49, 0.4), 10000));
  CHECK(bad.find("[FAIL]") != std::string::npos);
}
