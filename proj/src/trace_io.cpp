#include "monozero/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace monozero {

std::string format_real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_trace_csv(const IterationTrace& trace, std::ostream& out) {
  out << "n,lambda,theta,residual_dual,step_norm,phi_to_ref";
  if (trace.has_coords) {
    for (int i = 1; i <= trace.dim; ++i) out << ",x_" << i;
  }
  out << "\n";
  for (const auto& row : trace.rows) {
    out << row.n << ',' << format_real17(row.lambda) << ',' << format_real17(row.theta)
        << ',' << format_real17(row.residual_dual) << ','
        << format_real17(row.step_norm) << ',';
    if (row.phi_to_ref) out << format_real17(*row.phi_to_ref);
    if (trace.has_coords) {
      for (double c : row.coords) out << ',' << format_real17(c);
    }
    out << "\n";
  }
}

namespace {

void json_real(std::ostream& out, double v) {
  if (std::isfinite(v)) {
    out << format_real17(v);
  } else {
    out << "null";
  }
}

}  // namespace

void emit_trace_json(const IterationTrace& trace, std::ostream& out) {
  out << "[\n";
  for (std::size_t r = 0; r < trace.rows.size(); ++r) {
    const TraceRow& row = trace.rows[r];
    out << "  {\"n\": " << row.n << ", \"lambda\": ";
    json_real(out, row.lambda);
    out << ", \"theta\": ";
    json_real(out, row.theta);
    out << ", \"residual_dual\": ";
    json_real(out, row.residual_dual);
    out << ", \"step_norm\": ";
    json_real(out, row.step_norm);
    if (row.phi_to_ref) {
      out << ", \"phi_to_ref\": ";
      json_real(out, *row.phi_to_ref);
    }
    if (trace.has_coords) {
      for (std::size_t i = 0; i < row.coords.size(); ++i) {
        out << ", \"x_" << (i + 1) << "\": ";
        json_real(out, row.coords[i]);
      }
    }
    out << "}" << (r + 1 < trace.rows.size() ? "," : "") << "\n";
  }
  out << "]\n";
}

void emit_trace(const IterationTrace& trace, const std::string& format,
                const std::string& path) {
  std::ostringstream buf;
  if (format == "csv") {
    emit_trace_csv(trace, buf);
  } else if (format == "json") {
    emit_trace_json(trace, buf);
  } else {
    throw std::runtime_error("emit_trace: unknown format \"" + format + "\"");
  }
  write_text_file(path, buf.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace monozero
