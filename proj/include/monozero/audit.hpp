#pragma once

// The property-audit suite: each named check verifies one of the geometric or
// algebraic invariants the solver relies on, over seeded sweeps.  Checks are
// independently reported; a known-violation line documents the one bound that
// provably fails (with a witness) without counting against the verdict.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace monozero {

struct AuditCheck {
  std::string name;
  bool passed;
  bool counted;  // known-violation lines are reported but not counted
  std::string detail;
};

struct AuditResult {
  std::vector<AuditCheck> checks;
  int counted_total = 0;
  int counted_passed = 0;
  bool ok = false;  // every counted check passed
};

AuditResult run_audit(std::uint64_t seed);

void print_audit(const AuditResult& result, std::ostream& out);

}  // namespace monozero
