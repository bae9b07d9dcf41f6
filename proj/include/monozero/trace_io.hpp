#pragma once

// Trace and report persistence.  Reals are serialized with 17 significant
// digits so files round-trip exactly and identical runs produce identical
// bytes.

#include <iosfwd>
#include <string>

#include "monozero/solver.hpp"

namespace monozero {

// %.17g; non-finite values print as nan/inf in CSV and null in JSON.
std::string format_real17(double v);

// Columns: n, lambda, theta, residual_dual, step_norm, phi_to_ref, then
// x_1..x_dim when coordinates were recorded.  The phi_to_ref field is empty
// when the trace carries no reference.
void emit_trace_csv(const IterationTrace& trace, std::ostream& out);

// The same rows as an array of objects; absent fields are omitted, not null.
void emit_trace_json(const IterationTrace& trace, std::ostream& out);

// format is "csv" or "json".  I/O failures raise std::runtime_error naming
// the path.
void emit_trace(const IterationTrace& trace, const std::string& format,
                const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace monozero
