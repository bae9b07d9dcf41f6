#include "monozero/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace monozero {

namespace {

using json = nlohmann::ordered_json;

struct Parser {
  std::vector<ConfigIssue> issues;

  void issue(const std::string& path, const std::string& message) {
    issues.push_back(ConfigIssue{path, message});
  }

  // Flags every key outside `allowed`; keys in `elsewhere` get a message
  // naming the mismatch instead of a bare "unknown key".
  void check_keys(const json& obj, const std::string& path,
                  const std::vector<std::string>& allowed,
                  const std::vector<std::string>& elsewhere = {}) {
    for (const auto& item : obj.items()) {
      const std::string& key = item.key();
      if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
      const std::string where = path.empty() ? key : path + "." + key;
      if (std::find(elsewhere.begin(), elsewhere.end(), key) != elsewhere.end()) {
        issue(where, "key is not meaningful for this kind");
      } else {
        issue(where, "unknown key (strict mode)");
      }
    }
  }

  const json* want_object(const json& parent, const char* key, const std::string& path) {
    if (!parent.contains(key)) return nullptr;
    const json& v = parent.at(key);
    if (!v.is_object()) {
      issue(path, "must be an object");
      return nullptr;
    }
    return &v;
  }

  std::optional<double> number(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_number()) {
      issue(path, "must be a number");
      return std::nullopt;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      issue(path, "must be finite");
      return std::nullopt;
    }
    return d;
  }

  std::optional<long> integer(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15) {
        return static_cast<long>(d);
      }
    }
    issue(path, "must be an integer");
    return std::nullopt;
  }

  std::optional<bool> boolean(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
      issue(path, "must be a boolean");
      return std::nullopt;
    }
    return v.get<bool>();
  }

  std::optional<std::string> text(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      issue(path, "must be a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::optional<std::vector<double>> number_array(const json& obj, const char* key,
                                                  const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_array()) {
      issue(path, "must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
      if (!e.is_number() || !std::isfinite(e.get<double>())) {
        issue(path, "must contain only finite numbers");
        return std::nullopt;
      }
      out.push_back(e.get<double>());
    }
    return out;
  }
};

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

bool kind_from_string(const std::string& s, ProblemKind& kind) {
  if (s == "zero") kind = ProblemKind::zero;
  else if (s == "minimize") kind = ProblemKind::minimize;
  else if (s == "vi") kind = ProblemKind::vi;
  else if (s == "resolvent_path") kind = ProblemKind::resolvent_path;
  else if (s == "gradient_projection") kind = ProblemKind::gradient_projection;
  else if (s == "compare") kind = ProblemKind::compare;
  else if (s == "audit") kind = ProblemKind::audit;
  else return false;
  return true;
}

void parse_operator(Parser& P, const json& obj, ProblemKind kind, int n,
                    OperatorConfig& op) {
  const auto builtin = P.text(obj, "builtin", "operator.builtin");
  if (!builtin) {
    P.issue("operator.builtin", "required: one of \"power\", \"linear\", \"gradient\"");
    return;
  }
  op.builtin = *builtin;
  if (op.builtin == "power") {
    P.check_keys(obj, "operator", {"builtin"});
  } else if (op.builtin == "linear") {
    P.check_keys(obj, "operator", {"builtin", "matrix", "offset"});
    const auto matrix = P.number_array(obj, "matrix", "operator.matrix");
    if (!matrix) {
      P.issue("operator.matrix", "required for the linear builtin (row-major n*n)");
    } else if (n > 0 && matrix->size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
      P.issue("operator.matrix", "must have n*n = " + std::to_string(n * n) + " entries");
    } else {
      op.matrix = *matrix;
    }
    if (const auto offset = P.number_array(obj, "offset", "operator.offset")) {
      if (n > 0 && offset->size() != static_cast<std::size_t>(n)) {
        P.issue("operator.offset", "must have n = " + std::to_string(n) + " entries");
      } else {
        op.offset = *offset;
      }
    }
  } else if (op.builtin == "gradient") {
    P.check_keys(obj, "operator", {"builtin", "functional", "center", "use_fd"});
    const auto functional = P.text(obj, "functional", "operator.functional");
    if (!functional) {
      P.issue("operator.functional", "required: \"quadratic\" or \"quartic\"");
    } else if (*functional != "quadratic" && *functional != "quartic") {
      P.issue("operator.functional", "must be \"quadratic\" or \"quartic\"; got \"" +
                                         *functional + "\"");
    } else {
      op.functional = *functional;
    }
    const auto center = P.number_array(obj, "center", "operator.center");
    if (!center) {
      P.issue("operator.center", "required for the gradient builtin");
    } else if (n > 0 && center->size() != static_cast<std::size_t>(n)) {
      P.issue("operator.center", "must have n = " + std::to_string(n) + " entries");
    } else {
      op.center = *center;
    }
    if (const auto use_fd = P.boolean(obj, "use_fd", "operator.use_fd")) op.use_fd = *use_fd;
  } else {
    P.issue("operator.builtin", "must be \"power\", \"linear\", or \"gradient\"; got \"" +
                                    op.builtin + "\"");
    return;
  }
  if (kind == ProblemKind::minimize && op.builtin != "gradient") {
    P.issue("operator.builtin", "minimize requires the gradient builtin");
  }
}

void parse_set(Parser& P, const json& obj, const std::string& path, int n, SetConfig& set) {
  const auto kind = P.text(obj, "kind", path + ".kind");
  if (!kind) {
    P.issue(path + ".kind", "required: one of \"box\", \"ball\", \"halfspace\"");
    return;
  }
  set.kind = *kind;
  auto expect_len = [&](const std::optional<std::vector<double>>& arr, const char* key) {
    if (arr && n > 0 && arr->size() != static_cast<std::size_t>(n)) {
      P.issue(path + "." + key, "must have n = " + std::to_string(n) + " entries");
      return false;
    }
    return arr.has_value();
  };
  if (set.kind == "box") {
    P.check_keys(obj, path, {"kind", "lo", "hi"});
    const auto lo = P.number_array(obj, "lo", path + ".lo");
    const auto hi = P.number_array(obj, "hi", path + ".hi");
    if (!lo) P.issue(path + ".lo", "required for box sets");
    if (!hi) P.issue(path + ".hi", "required for box sets");
    if (expect_len(lo, "lo")) set.lo = *lo;
    if (expect_len(hi, "hi")) set.hi = *hi;
    if (!set.lo.empty() && set.lo.size() == set.hi.size()) {
      for (std::size_t i = 0; i < set.lo.size(); ++i) {
        if (!(set.lo[i] <= set.hi[i])) {
          P.issue(path, "box requires lo <= hi componentwise");
          break;
        }
      }
    }
  } else if (set.kind == "ball") {
    P.check_keys(obj, path, {"kind", "center", "radius"});
    const auto center = P.number_array(obj, "center", path + ".center");
    if (!center) P.issue(path + ".center", "required for ball sets");
    if (expect_len(center, "center")) set.center = *center;
    const auto radius = P.number(obj, "radius", path + ".radius");
    if (!radius) {
      P.issue(path + ".radius", "required for ball sets");
    } else if (!(*radius > 0.0)) {
      P.issue(path + ".radius", "must be > 0; got " + fmt(*radius));
    } else {
      set.radius = *radius;
    }
  } else if (set.kind == "halfspace") {
    P.check_keys(obj, path, {"kind", "normal", "offset"});
    const auto normal = P.number_array(obj, "normal", path + ".normal");
    if (!normal) P.issue(path + ".normal", "required for halfspace sets");
    if (expect_len(normal, "normal")) {
      set.normal = *normal;
      double nn = 0.0;
      for (double t : set.normal) nn += t * t;
      if (nn == 0.0) P.issue(path + ".normal", "must be nonzero");
    }
    if (const auto offset = P.number(obj, "offset", path + ".offset")) set.offset = *offset;
  } else {
    P.issue(path + ".kind", "must be \"box\", \"ball\", or \"halfspace\"; got \"" +
                                set.kind + "\"");
  }
}

}  // namespace

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::zero: return "zero";
    case ProblemKind::minimize: return "minimize";
    case ProblemKind::vi: return "vi";
    case ProblemKind::resolvent_path: return "resolvent_path";
    case ProblemKind::gradient_projection: return "gradient_projection";
    case ProblemKind::compare: return "compare";
    case ProblemKind::audit: return "audit";
  }
  return "unknown";
}

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  Parser P;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    P.issue("config", std::string("not valid JSON: ") + e.what());
    result.issues = std::move(P.issues);
    return result;
  }
  if (!j.is_object()) {
    P.issue("config", "top level must be a JSON object");
    result.issues = std::move(P.issues);
    return result;
  }

  ProblemConfig cfg;

  const auto kind_text = P.text(j, "kind", "kind");
  if (!kind_text) {
    P.issue("kind", "required: one of zero, minimize, vi, resolvent_path, "
                    "gradient_projection, compare, audit");
    result.issues = std::move(P.issues);
    return result;
  }
  if (!kind_from_string(*kind_text, cfg.kind)) {
    P.issue("kind", "unrecognized kind \"" + *kind_text + "\"");
    result.issues = std::move(P.issues);
    return result;
  }

  if (const auto seed = P.integer(j, "seed", "seed")) {
    if (*seed < 0) {
      P.issue("seed", "must be >= 0");
    } else {
      cfg.seed = static_cast<std::uint64_t>(*seed);
    }
  }

  if (cfg.kind == ProblemKind::audit) {
    P.check_keys(j, "", {"kind", "seed"},
                 {"space", "operator", "schedule", "stop", "x1", "family", "witness",
                  "oracle", "output", "respath", "gp"});
    if (P.issues.empty()) result.config = cfg;
    result.issues = std::move(P.issues);
    return result;
  }

  const bool wants_family = cfg.kind == ProblemKind::vi ||
                            cfg.kind == ProblemKind::gradient_projection ||
                            cfg.kind == ProblemKind::compare;
  const bool wants_gp =
      cfg.kind == ProblemKind::gradient_projection || cfg.kind == ProblemKind::compare;
  const bool wants_respath = cfg.kind == ProblemKind::resolvent_path;

  std::vector<std::string> allowed = {"kind", "seed", "space", "operator",
                                      "schedule", "stop", "x1", "oracle", "output"};
  std::vector<std::string> elsewhere;
  auto allow_if = [&](bool cond, const char* key) {
    (cond ? allowed : elsewhere).push_back(key);
  };
  allow_if(wants_family, "family");
  allow_if(wants_family, "witness");
  allow_if(wants_gp, "gp");
  allow_if(wants_respath, "respath");
  P.check_keys(j, "", allowed, elsewhere);

  if (const json* space = P.want_object(j, "space", "space")) {
    P.check_keys(*space, "space", {"n", "s", "p"});
    if (const auto n = P.integer(*space, "n", "space.n")) {
      if (*n < 1) {
        P.issue("space.n", "must be >= 1");
      } else {
        cfg.n = static_cast<int>(*n);
      }
    } else if (!space->contains("n")) {
      P.issue("space.n", "required");
    }
    if (const auto s = P.number(*space, "s", "space.s")) {
      if (!(*s > 1.0)) P.issue("space.s", "must be > 1; got " + fmt(*s));
      else cfg.s = *s;
    } else if (!space->contains("s")) {
      P.issue("space.s", "required");
    }
    if (const auto p = P.number(*space, "p", "space.p")) {
      if (!(*p > 1.0)) P.issue("space.p", "must be > 1; got " + fmt(*p));
      else cfg.p = *p;
    } else if (!space->contains("p")) {
      P.issue("space.p", "required");
    }
  } else {
    P.issue("space", "required object {n, s, p}");
  }

  if (wants_family) {
    if (cfg.s != 2.0 || cfg.p != 2.0) {
      P.issue("space", std::string(to_string(cfg.kind)) +
                           " requires a Hilbert space (s = p = 2); Euclidean "
                           "projections are the only supported family members");
    }
  }

  if (const json* op = P.want_object(j, "operator", "operator")) {
    parse_operator(P, *op, cfg.kind, cfg.n, cfg.op);
  } else {
    P.issue("operator", "required object for this kind");
  }
  if (cfg.op.builtin == "power" && cfg.p < 2.0) {
    P.issue("space.p", "the power builtin requires p >= 2; got " + fmt(cfg.p));
  }

  if (const json* schedule = P.want_object(j, "schedule", "schedule")) {
    P.check_keys(*schedule, "schedule", {"lambda0", "a", "theta0", "b"});
    if (const auto v = P.number(*schedule, "lambda0", "schedule.lambda0")) {
      if (!(*v > 0.0 && *v < 1.0)) {
        P.issue("schedule.lambda0", "must lie in (0, 1); got " + fmt(*v));
      } else {
        cfg.lambda0 = *v;
      }
    }
    if (const auto v = P.number(*schedule, "a", "schedule.a")) {
      if (!(*v >= 0.0)) P.issue("schedule.a", "must be >= 0; got " + fmt(*v));
      else cfg.a = *v;
    }
    if (const auto v = P.number(*schedule, "theta0", "schedule.theta0")) {
      if (!(*v > 0.0 && *v < 0.5)) {
        P.issue("schedule.theta0", "must lie in (0, 1/2); got " + fmt(*v));
      } else {
        cfg.theta0 = *v;
      }
    }
    if (const auto v = P.number(*schedule, "b", "schedule.b")) {
      if (!(*v > 0.0)) P.issue("schedule.b", "must be > 0; got " + fmt(*v));
      else cfg.b = *v;
    }
  }
  if (!(cfg.a + cfg.b < 1.0)) {
    P.issue("schedule", "requires a + b < 1 (divergent sum lambda_n*theta_n and "
                        "vanishing ratio); got a + b = " + fmt(cfg.a + cfg.b));
  }

  if (const json* stop = P.want_object(j, "stop", "stop")) {
    P.check_keys(*stop, "stop", {"tol_residual", "tol_step", "max_iter"});
    if (const auto v = P.number(*stop, "tol_residual", "stop.tol_residual")) {
      if (!(*v >= 0.0)) P.issue("stop.tol_residual", "must be >= 0");
      else cfg.tol_residual = *v;
    }
    if (const auto v = P.number(*stop, "tol_step", "stop.tol_step")) {
      if (!(*v >= 0.0)) P.issue("stop.tol_step", "must be >= 0");
      else cfg.tol_step = *v;
    }
    if (const auto v = P.integer(*stop, "max_iter", "stop.max_iter")) {
      if (*v < 1) P.issue("stop.max_iter", "must be >= 1");
      else cfg.max_iter = *v;
    }
  }
  if (!(cfg.tol_residual > 0.0 || cfg.tol_step > 0.0)) {
    P.issue("stop", "at least one of tol_residual, tol_step must be positive");
  }

  if (const auto x1 = P.number_array(j, "x1", "x1")) {
    if (cfg.n > 0 && x1->size() != static_cast<std::size_t>(cfg.n)) {
      P.issue("x1", "must have n = " + std::to_string(cfg.n) + " entries");
    } else {
      cfg.x1 = *x1;
    }
  } else if (!j.contains("x1")) {
    P.issue("x1", "required: the start (and anchor) point");
  }

  if (wants_family) {
    if (!j.contains("family")) {
      P.issue("family", std::string("required for kind ") + to_string(cfg.kind) +
                            ": a list of set specs");
    } else if (!j.at("family").is_array()) {
      P.issue("family", "must be an array of set specs");
    } else {
      const json& fam = j.at("family");
      if (fam.empty()) P.issue("family", "must contain at least one set");
      if (cfg.kind != ProblemKind::vi && fam.size() != 1) {
        P.issue("family", std::string(to_string(cfg.kind)) +
                              " requires exactly one set (the projection baseline "
                              "has no closed form on intersections)");
      }
      for (std::size_t i = 0; i < fam.size(); ++i) {
        const std::string path = "family[" + std::to_string(i) + "]";
        if (!fam.at(i).is_object()) {
          P.issue(path, "must be an object");
          continue;
        }
        SetConfig set;
        parse_set(P, fam.at(i), path, cfg.n, set);
        cfg.family.push_back(std::move(set));
      }
    }
    if (const auto witness = P.number_array(j, "witness", "witness")) {
      if (cfg.n > 0 && witness->size() != static_cast<std::size_t>(cfg.n)) {
        P.issue("witness", "must have n = " + std::to_string(cfg.n) + " entries");
      } else {
        cfg.witness = *witness;
      }
    }
  }

  if (const json* oracle = P.want_object(j, "oracle", "oracle")) {
    P.check_keys(*oracle, "oracle", {"enabled", "tol"});
    if (const auto v = P.boolean(*oracle, "enabled", "oracle.enabled")) cfg.oracle.enabled = *v;
    if (const auto v = P.number(*oracle, "tol", "oracle.tol")) {
      if (!(*v > 0.0)) P.issue("oracle.tol", "must be > 0");
      else cfg.oracle.tol = *v;
    }
  }

  if (const json* output = P.want_object(j, "output", "output")) {
    P.check_keys(*output, "output", {"trace", "report", "record_coords", "format"});
    if (const auto v = P.text(*output, "trace", "output.trace")) cfg.output.trace = *v;
    if (const auto v = P.text(*output, "report", "output.report")) cfg.output.report = *v;
    if (const auto v = P.boolean(*output, "record_coords", "output.record_coords")) {
      cfg.output.record_coords = *v;
    }
    if (const auto v = P.text(*output, "format", "output.format")) {
      if (*v != "csv" && *v != "json") {
        P.issue("output.format", "must be \"csv\" or \"json\"; got \"" + *v + "\"");
      } else {
        cfg.output.format = *v;
      }
    }
  }

  if (wants_respath) {
    if (const json* respath = P.want_object(j, "respath", "respath")) {
      P.check_keys(*respath, "respath", {"indices", "inner_tol"});
      if (respath->contains("indices")) {
        const json& idx = respath->at("indices");
        if (!idx.is_array() || idx.empty()) {
          P.issue("respath.indices", "must be a nonempty array of integers");
        } else {
          std::vector<long> indices;
          bool ok = true;
          for (const auto& e : idx) {
            if (!e.is_number_integer() &&
                !(e.is_number_float() && e.get<double>() == std::floor(e.get<double>()))) {
              P.issue("respath.indices", "must contain only integers");
              ok = false;
              break;
            }
            indices.push_back(e.get<long>());
          }
          if (ok) {
            for (std::size_t i = 0; i < indices.size(); ++i) {
              if (indices[i] < 1 || (i > 0 && indices[i] <= indices[i - 1])) {
                P.issue("respath.indices", "must be >= 1 and strictly increasing");
                ok = false;
                break;
              }
            }
          }
          if (ok) cfg.respath.indices = std::move(indices);
        }
      }
      if (const auto v = P.number(*respath, "inner_tol", "respath.inner_tol")) {
        if (!(*v > 0.0)) P.issue("respath.inner_tol", "must be > 0");
        else cfg.respath.inner_tol = *v;
      }
    }
  }

  if (wants_gp) {
    if (const json* gp = P.want_object(j, "gp", "gp")) {
      P.check_keys(*gp, "gp", {"eta"});
      if (const auto v = P.number(*gp, "eta", "gp.eta")) {
        if (!(*v > 0.0)) P.issue("gp.eta", "must be > 0");
        else cfg.gp.eta = *v;
      }
    }
  }

  if (P.issues.empty()) result.config = std::move(cfg);
  result.issues = std::move(P.issues);
  return result;
}

std::string emit_config(const ProblemConfig& cfg) {
  json j;
  j["kind"] = to_string(cfg.kind);
  if (cfg.kind != ProblemKind::audit) {
    j["space"] = {{"n", cfg.n}, {"s", cfg.s}, {"p", cfg.p}};
    json op;
    op["builtin"] = cfg.op.builtin;
    if (cfg.op.builtin == "linear") {
      op["matrix"] = cfg.op.matrix;
      if (!cfg.op.offset.empty()) op["offset"] = cfg.op.offset;
    } else if (cfg.op.builtin == "gradient") {
      op["functional"] = cfg.op.functional;
      op["center"] = cfg.op.center;
      op["use_fd"] = cfg.op.use_fd;
    }
    j["operator"] = std::move(op);
    j["schedule"] = {{"lambda0", cfg.lambda0}, {"a", cfg.a},
                     {"theta0", cfg.theta0}, {"b", cfg.b}};
    j["stop"] = {{"tol_residual", cfg.tol_residual}, {"tol_step", cfg.tol_step},
                 {"max_iter", cfg.max_iter}};
    j["x1"] = cfg.x1;
    const bool wants_family = cfg.kind == ProblemKind::vi ||
                              cfg.kind == ProblemKind::gradient_projection ||
                              cfg.kind == ProblemKind::compare;
    if (wants_family) {
      json fam = json::array();
      for (const auto& set : cfg.family) {
        json s;
        s["kind"] = set.kind;
        if (set.kind == "box") {
          s["lo"] = set.lo;
          s["hi"] = set.hi;
        } else if (set.kind == "ball") {
          s["center"] = set.center;
          s["radius"] = set.radius;
        } else if (set.kind == "halfspace") {
          s["normal"] = set.normal;
          s["offset"] = set.offset;
        }
        fam.push_back(std::move(s));
      }
      j["family"] = std::move(fam);
      if (cfg.witness) j["witness"] = *cfg.witness;
    }
    if (cfg.kind == ProblemKind::gradient_projection || cfg.kind == ProblemKind::compare) {
      j["gp"] = {{"eta", cfg.gp.eta}};
    }
    if (cfg.kind == ProblemKind::resolvent_path) {
      j["respath"] = {{"indices", cfg.respath.indices}, {"inner_tol", cfg.respath.inner_tol}};
    }
    j["oracle"] = {{"enabled", cfg.oracle.enabled}, {"tol", cfg.oracle.tol}};
    j["output"] = {{"trace", cfg.output.trace}, {"report", cfg.output.report},
                   {"record_coords", cfg.output.record_coords},
                   {"format", cfg.output.format}};
  }
  j["seed"] = cfg.seed;
  return j.dump(2) + "\n";
}

std::string format_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream out;
  out << "invalid config (" << issues.size() << " issue"
      << (issues.size() == 1 ? "" : "s") << "):\n";
  for (std::size_t i = 0; i < issues.size(); ++i) {
    out << "  " << (i + 1) << ". " << issues[i].path << ": " << issues[i].message
        << "\n";
  }
  return out.str();
}

}  // namespace monozero
