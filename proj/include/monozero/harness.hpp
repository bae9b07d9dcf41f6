#pragma once

// Problem execution: builds the typed objects a validated config describes,
// runs the requested kind, writes trace and report files, prints a one-screen
// summary, and maps outcomes to exit codes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "monozero/config.hpp"

namespace monozero {

struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> max_iter;
  std::optional<double> tol;          // replaces stop.tol_residual
  std::optional<std::string> format;  // replaces output.format
  std::string out_dir;                // prefixed to trace/report paths
};

ProblemConfig apply_overrides(ProblemConfig config, const CliOverrides& overrides);

// Exit codes: 0 ok; 2 invalid config or unusable problem data; 3 iteration
// budget exhausted (outer or resolvent inner); 4 diverged; 5 oracle failure;
// 6 audit failure.
int run(const ProblemConfig& config, std::ostream& out);

// parse_config + apply_overrides + run; parse issues print to out, exit 2.
int run_config_text(const std::string& text, const CliOverrides& overrides,
                    std::ostream& out);

}  // namespace monozero
