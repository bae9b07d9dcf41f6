#pragma once

// Strict JSON problem configuration: unknown keys are rejected at every
// level, every violation is collected (not only the first), and defaults are
// materialized so that emit(parse(text)) is a normal form.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace monozero {

enum class ProblemKind {
  zero,
  minimize,
  vi,
  resolvent_path,
  gradient_projection,
  compare,
  audit,
};

const char* to_string(ProblemKind kind);

struct OperatorConfig {
  std::string builtin;          // "power" | "linear" | "gradient"
  std::vector<double> matrix;   // linear: row-major n*n
  std::vector<double> offset;   // linear: length n, defaults to zeros
  std::string functional;       // gradient: "quadratic" | "quartic"
  std::vector<double> center;   // gradient: length n
  bool use_fd = false;          // gradient: force finite differences
};

struct SetConfig {
  std::string kind;  // "box" | "ball" | "halfspace"
  std::vector<double> lo, hi;        // box
  std::vector<double> center;        // ball
  double radius = 0.0;               // ball
  std::vector<double> normal;        // halfspace <normal, x> <= offset
  double offset = 0.0;
};

struct OracleConfig {
  bool enabled = false;
  double tol = 1e-8;
};

struct OutputConfig {
  std::string trace;   // empty: no trace file
  std::string report;  // empty: no report file
  bool record_coords = false;
  std::string format = "csv";  // "csv" | "json"
};

struct RespathConfig {
  std::vector<long> indices = {1, 10, 100, 1000, 10000, 100000};
  double inner_tol = 1e-10;
};

struct GpConfig {
  double eta = 0.5;
};

struct ProblemConfig {
  ProblemKind kind = ProblemKind::zero;
  int n = 0;
  double s = 2.0;
  double p = 2.0;
  OperatorConfig op;
  double lambda0 = 0.9, a = 0.5, theta0 = 0.49, b = 0.25;
  double tol_residual = 1e-6, tol_step = 0.0;
  long max_iter = 1000000;
  std::vector<double> x1;
  std::vector<SetConfig> family;
  std::optional<std::vector<double>> witness;  // defaults to x1 when absent
  OracleConfig oracle;
  OutputConfig output;
  RespathConfig respath;
  GpConfig gp;
  std::uint64_t seed = 1234567;
};

struct ConfigIssue {
  std::string path;  // e.g. "schedule.theta0"
  std::string message;
};

struct ParseResult {
  std::optional<ProblemConfig> config;
  std::vector<ConfigIssue> issues;

  bool ok() const { return config.has_value(); }
};

ParseResult parse_config(const std::string& text);

// Normal form with defaults materialized; parse(emit(parse(t))) == parse(t).
std::string emit_config(const ProblemConfig& config);

std::string format_issues(const std::vector<ConfigIssue>& issues);

}  // namespace monozero
