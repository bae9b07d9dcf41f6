#include "monozero/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "monozero/audit.hpp"
#include "monozero/oracle.hpp"
#include "monozero/solver.hpp"
#include "monozero/trace_io.hpp"

namespace monozero {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_vec(const std::vector<double>& v, const char* (*f)(double) = nullptr) {
  (void)f;
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out + "]";
}

std::string json_vec(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_real17(v[i]);
  }
  return out + "]";
}

std::string join_path(const std::string& dir, const std::string& path) {
  if (dir.empty() || path.empty()) return path;
  return (std::filesystem::path(dir) / path).string();
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of("/\\");
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

struct BuiltProblem {
  MonotoneOperator T;
  std::optional<Functional> f;
};

BuiltProblem build_operator(const SpaceSpec& space, const ProblemConfig& cfg) {
  const OperatorConfig& op = cfg.op;
  if (op.builtin == "power") {
    return BuiltProblem{power_map(space), std::nullopt};
  }
  if (op.builtin == "linear") {
    DualCovector b(static_cast<std::size_t>(space.n));
    if (!op.offset.empty()) b = DualCovector(op.offset);
    return BuiltProblem{linear_map(space, op.matrix, b), std::nullopt};
  }
  const PrimalVector center(op.center);
  const Functional f = (op.functional == "quartic") ? quartic_functional(center)
                                                    : quadratic_functional(center);
  const MonotoneOperator T =
      op.use_fd ? gradient_of(space, f.value) : gradient_of(space, f.value, f.gradient);
  return BuiltProblem{T, f};
}

std::vector<ConvexSetSpec> build_sets(const SpaceSpec& space, const ProblemConfig& cfg) {
  std::vector<ConvexSetSpec> sets;
  sets.reserve(cfg.family.size());
  for (const auto& sc : cfg.family) {
    if (sc.kind == "box") {
      sets.push_back(make_box(space, sc.lo, sc.hi));
    } else if (sc.kind == "ball") {
      sets.push_back(make_ball(space, PrimalVector(sc.center), sc.radius));
    } else {
      sets.push_back(make_halfspace(space, sc.normal, sc.offset));
    }
  }
  return sets;
}

std::optional<OracleSolution> compute_oracle(const SpaceSpec& space,
                                             const ProblemConfig& cfg,
                                             const BuiltProblem& built,
                                             const std::vector<ConvexSetSpec>& sets,
                                             const PrimalVector& witness) {
  const bool vi_like = cfg.kind == ProblemKind::vi ||
                       cfg.kind == ProblemKind::gradient_projection ||
                       cfg.kind == ProblemKind::compare;
  if (!cfg.oracle.enabled && cfg.kind != ProblemKind::compare) return std::nullopt;
  if (vi_like) {
    return oracle_vi(built.T, sets, witness, cfg.oracle.tol);
  }
  if (cfg.op.builtin == "linear") {
    DualCovector b(static_cast<std::size_t>(space.n));
    if (!cfg.op.offset.empty()) b = DualCovector(cfg.op.offset);
    return oracle_zero_linear(space, cfg.op.matrix, b);
  }
  const PrimalVector x1(cfg.x1);
  double r2 = 0.0;
  for (double t : cfg.x1) r2 += t * t;
  const SearchRegion region{x1, std::max(10.0, 2.0 * std::sqrt(r2))};
  return oracle_zero(built.T, region, cfg.oracle.tol, cfg.seed);
}

int status_exit(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged_residual:
    case SolveStatus::converged_step:
      return 0;
    case SolveStatus::max_iter_reached:
      return 3;
    case SolveStatus::diverged_nonfinite:
      return 4;
  }
  return 4;
}

// First recorded iteration whose space-norm distance to the reference drops
// to tol; phi_to_ref = ||ref - x||^2 in the Hilbert drivers that fill it.
std::optional<long> iterations_to(const IterationTrace& trace, double tol) {
  for (const auto& row : trace.rows) {
    if (row.phi_to_ref && std::sqrt(std::max(0.0, *row.phi_to_ref)) <= tol) {
      return row.n;
    }
  }
  return std::nullopt;
}

void append_oracle_json(std::ostringstream& body, const SpaceSpec& space,
                        const OracleSolution& oracle, const PrimalVector& final_point) {
  body << "  \"oracle\": {\"method\": \"" << to_string(oracle.method)
       << "\", \"point\": " << json_vec(oracle.point.coords)
       << ", \"residual\": " << format_real17(oracle.residual)
       << ", \"certified_tol\": " << format_real17(oracle.certified_tol)
       << ", \"gap\": " << format_real17(norm(space, final_point - oracle.point))
       << "},\n";
}

void print_oracle_summary(std::ostream& out, const SpaceSpec& space,
                          const OracleSolution& oracle, const PrimalVector& final_point) {
  out << "oracle (" << to_string(oracle.method) << "): point "
      << fmt_vec(oracle.point.coords) << ", residual " << fmt(oracle.residual)
      << "\noracle gap: " << fmt(norm(space, final_point - oracle.point)) << "\n";
}

int run_iterative(const ProblemConfig& cfg, std::ostream& out) {
  const SpaceSpec space(cfg.n, cfg.s, cfg.p);
  const PrimalVector x1(cfg.x1);
  const PowerSchedule schedule(cfg.lambda0, cfg.a, cfg.theta0, cfg.b);
  const StopRule stop(cfg.tol_residual, cfg.tol_step, cfg.max_iter);
  const BuiltProblem built = build_operator(space, cfg);

  std::vector<ConvexSetSpec> sets;
  PrimalVector witness;
  const bool vi_like = cfg.kind == ProblemKind::vi ||
                       cfg.kind == ProblemKind::gradient_projection ||
                       cfg.kind == ProblemKind::compare;
  if (vi_like) {
    sets = build_sets(space, cfg);
    witness = cfg.witness ? PrimalVector(*cfg.witness) : x1;
  }

  const std::optional<OracleSolution> oracle =
      compute_oracle(space, cfg, built, sets, witness);

  TraceOptions opts;
  opts.record_coords = cfg.output.record_coords;
  if (oracle) opts.reference = oracle->point;

  out << "kind: " << to_string(cfg.kind) << "\nspace: n=" << cfg.n << ", s=" << fmt(cfg.s)
      << ", p=" << fmt(cfg.p) << "\noperator: " << built.T.label << "\n";

  if (cfg.kind == ProblemKind::compare) {
    const CyclicFamily family = make_projection_family(sets, witness);
    const SolveResult vi = solve_vi(space, built.T, family, x1, schedule, stop, opts);
    const double eta = cfg.gp.eta;
    const SolveResult gp = gradient_projection(
        space, built.T, sets.front(), x1, [eta](long) { return eta; }, stop, opts);

    const double compare_tol = 1e-3;
    const auto vi_hit = iterations_to(vi.trace, compare_tol);
    const auto gp_hit = iterations_to(gp.trace, compare_tol);
    const double vi_gap = norm(space, vi.report.final_point - oracle->point);
    const double gp_gap = norm(space, gp.report.final_point - oracle->point);

    print_oracle_summary(out, space, *oracle, vi.report.final_point);
    out << "side-by-side (distance-to-oracle tolerance " << fmt(compare_tol) << "):\n";
    auto line = [&](const char* name, const SolveResult& r, std::optional<long> hit,
                    double gap) {
      out << "  " << name << ": status " << to_string(r.report.status) << ", iterations "
          << r.report.iterations << ", reached tolerance at "
          << (hit ? std::to_string(*hit) : std::string("never")) << ", final gap "
          << fmt(gap) << "\n";
    };
    line("anchored cyclic driver", vi, vi_hit, vi_gap);
    line("projected gradient    ", gp, gp_hit, gp_gap);

    if (!cfg.output.trace.empty()) {
      emit_trace(vi.trace, cfg.output.format, with_suffix(cfg.output.trace, "_vi"));
      emit_trace(gp.trace, cfg.output.format, with_suffix(cfg.output.trace, "_gp"));
      out << "traces: " << with_suffix(cfg.output.trace, "_vi") << ", "
          << with_suffix(cfg.output.trace, "_gp") << "\n";
    }
    if (!cfg.output.report.empty()) {
      std::ostringstream body;
      body << "{\n  \"kind\": \"compare\",\n";
      append_oracle_json(body, space, *oracle, vi.report.final_point);
      auto side = [&](const char* name, const SolveResult& r, std::optional<long> hit,
                      double gap) {
        body << "  \"" << name << "\": {\"status\": \"" << to_string(r.report.status)
             << "\", \"iterations\": " << r.report.iterations
             << ", \"final_point\": " << json_vec(r.report.final_point.coords)
             << ", \"gap\": " << format_real17(gap) << ", \"iterations_to_tol\": "
             << (hit ? std::to_string(*hit) : std::string("null")) << "}";
      };
      body << "  \"compare_tol\": " << format_real17(compare_tol) << ",\n";
      side("vi", vi, vi_hit, vi_gap);
      body << ",\n";
      side("gp", gp, gp_hit, gp_gap);
      body << "\n}\n";
      write_text_file(cfg.output.report, body.str());
      out << "report: " << cfg.output.report << "\n";
    }
    return std::max(status_exit(vi.report.status), status_exit(gp.report.status));
  }

  SolveResult result = [&]() {
    switch (cfg.kind) {
      case ProblemKind::zero:
        return space.hilbert() ? solve_zero_hilbert(space, built.T, x1, schedule, stop, opts)
                               : solve_zero(space, built.T, x1, schedule, stop, opts);
      case ProblemKind::minimize:
        return minimize(space, *built.f, x1, schedule, stop, opts);
      case ProblemKind::vi: {
        const CyclicFamily family = make_projection_family(sets, witness);
        return solve_vi(space, built.T, family, x1, schedule, stop, opts);
      }
      case ProblemKind::gradient_projection: {
        const double eta = cfg.gp.eta;
        return gradient_projection(space, built.T, sets.front(), x1,
                                   [eta](long) { return eta; }, stop, opts);
      }
      default:
        throw std::logic_error("run_iterative: unexpected kind");
    }
  }();

  const SolveReport& report = result.report;
  out << "status: " << to_string(report.status) << "\niterations: " << report.iterations
      << "\nfinal residual (dual norm): " << fmt(report.final_residual)
      << "\nfinal point: " << fmt_vec(report.final_point.coords) << "\n";
  if (report.final_value) out << "final value: " << fmt(*report.final_value) << "\n";
  if (report.status == SolveStatus::diverged_nonfinite) {
    out << "diverged at iteration: " << report.diverged_at << "\n";
  }
  if (oracle) print_oracle_summary(out, space, *oracle, report.final_point);

  if (!cfg.output.trace.empty()) {
    emit_trace(result.trace, cfg.output.format, cfg.output.trace);
    out << "trace: " << cfg.output.trace << " (" << result.trace.rows.size() << " rows)\n";
  }
  if (!cfg.output.report.empty()) {
    std::ostringstream body;
    body << "{\n  \"kind\": \"" << to_string(cfg.kind) << "\",\n  \"status\": \""
         << to_string(report.status) << "\",\n  \"iterations\": " << report.iterations
         << ",\n  \"final_residual\": " << format_real17(report.final_residual)
         << ",\n  \"final_point\": " << json_vec(report.final_point.coords) << ",\n";
    if (report.final_value) {
      body << "  \"final_value\": " << format_real17(*report.final_value) << ",\n";
    }
    if (oracle) append_oracle_json(body, space, *oracle, report.final_point);
    body << "  \"trace_rows\": " << result.trace.rows.size() << "\n}\n";
    write_text_file(cfg.output.report, body.str());
    out << "report: " << cfg.output.report << "\n";
  }
  return status_exit(report.status);
}

int run_respath(const ProblemConfig& cfg, std::ostream& out) {
  const SpaceSpec space(cfg.n, cfg.s, cfg.p);
  const PrimalVector x1(cfg.x1);
  const PowerSchedule schedule(cfg.lambda0, cfg.a, cfg.theta0, cfg.b);
  const BuiltProblem built = build_operator(space, cfg);

  const std::vector<PathRow> rows = regularization_path(
      space, built.T, x1, schedule, cfg.respath.indices, cfg.respath.inner_tol);

  out << "kind: resolvent_path\nspace: n=" << cfg.n << ", s=" << fmt(cfg.s)
      << ", p=" << fmt(cfg.p) << "\noperator: " << built.T.label << "\n";
  out << "  n        theta        ||y||        stationarity   inner\n";
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const PathRow& row = rows[i];
    if (i > 0 && !(norm(space, row.y) < norm(space, rows[i - 1].y))) decreasing = false;
    char line[160];
    std::snprintf(line, sizeof(line), "  %-8ld %-12.6g %-12.6g %-14.6g %ld\n", row.n,
                  row.theta, norm(space, row.y), row.stationarity_residual,
                  row.inner_iterations);
    out << line;
  }
  out << "path norms strictly decreasing: " << (decreasing ? "yes" : "no") << "\n";

  std::optional<OracleSolution> oracle;
  if (cfg.oracle.enabled) {
    oracle = compute_oracle(space, cfg, built, {}, PrimalVector{});
    print_oracle_summary(out, space, *oracle, rows.back().y);
  }

  if (!cfg.output.report.empty()) {
    std::ostringstream body;
    body << "{\n  \"kind\": \"resolvent_path\",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const PathRow& row = rows[i];
      body << "    {\"n\": " << row.n << ", \"theta\": " << format_real17(row.theta)
           << ", \"y\": " << json_vec(row.y.coords)
           << ", \"inner_iterations\": " << row.inner_iterations
           << ", \"stationarity_residual\": " << format_real17(row.stationarity_residual)
           << ", \"consecutive_gap\": " << format_real17(row.consecutive_gap)
           << ", \"consecutive_bound\": " << format_real17(row.consecutive_bound) << "}"
           << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    body << "  ],\n";
    if (oracle) append_oracle_json(body, space, *oracle, rows.back().y);
    body << "  \"norms_decreasing\": " << (decreasing ? "true" : "false") << "\n}\n";
    write_text_file(cfg.output.report, body.str());
    out << "report: " << cfg.output.report << "\n";
  }
  return 0;
}

}  // namespace

ProblemConfig apply_overrides(ProblemConfig config, const CliOverrides& overrides) {
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.max_iter) config.max_iter = *overrides.max_iter;
  if (overrides.tol) config.tol_residual = *overrides.tol;
  if (overrides.format) config.output.format = *overrides.format;
  if (!overrides.out_dir.empty()) {
    config.output.trace = join_path(overrides.out_dir, config.output.trace);
    config.output.report = join_path(overrides.out_dir, config.output.report);
  }
  return config;
}

int run(const ProblemConfig& config, std::ostream& out) {
  if (config.kind == ProblemKind::audit) {
    const AuditResult audit = run_audit(config.seed);
    print_audit(audit, out);
    return audit.ok ? 0 : 6;
  }
  try {
    if (config.kind == ProblemKind::resolvent_path) return run_respath(config, out);
    return run_iterative(config, out);
  } catch (const OracleFailure& e) {
    out << "oracle failure: " << e.what() << "\n";
    return 5;
  } catch (const ResolventFailure& e) {
    out << "resolvent failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    out << "invalid problem: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_config_text(const std::string& text, const CliOverrides& overrides,
                    std::ostream& out) {
  const ParseResult parsed = parse_config(text);
  if (!parsed.ok()) {
    out << format_issues(parsed.issues);
    return 2;
  }
  return run(apply_overrides(*parsed.config, overrides), out);
}

}  // namespace monozero
