#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monozero/config.hpp"
#include "monozero/harness.hpp"

namespace {

struct SubSpec {
  const char* name;
  const char* desc;
  monozero::ProblemKind kind;
  bool config_required;
};

constexpr SubSpec kSubs[] = {
    {"solve", "find a zero of a strongly monotone operator", monozero::ProblemKind::zero,
     true},
    {"minimize", "minimize a convex functional via its gradient",
     monozero::ProblemKind::minimize, true},
    {"vi", "solve a variational inequality over a cyclic projection family",
     monozero::ProblemKind::vi, true},
    {"gp", "projected-gradient baseline on a single constraint set",
     monozero::ProblemKind::gradient_projection, true},
    {"respath", "follow the regularization path of anchored resolvents",
     monozero::ProblemKind::resolvent_path, true},
    {"compare", "run the cyclic driver and projected gradient side by side",
     monozero::ProblemKind::compare, true},
    {"check", "run the self-audit property suite", monozero::ProblemKind::audit, false},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero finding for strongly monotone operators in finite lp spaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  long max_iter = 0;
  double tol = 0.0;
  std::string format;

  for (const SubSpec& spec : kSubs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.desc);
    CLI::Option* cfg = sub->add_option("--config", config_path, "problem config (JSON)");
    if (spec.config_required) cfg->required();
    sub->add_option("--out", out_dir, "directory prefixed to trace/report paths");
    sub->add_option("--seed", seed, "override config seed");
    sub->add_option("--format", format, "override trace format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--max-iter", max_iter, "override stop.max_iter");
    sub->add_option("--tol", tol, "override stop.tol_residual");
  }

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  const SubSpec* spec = nullptr;
  for (const SubSpec& s : kSubs) {
    if (sub->get_name() == s.name) spec = &s;
  }

  std::string text;
  if (config_path.empty()) {
    text = "{\"kind\": \"audit\"}\n";
  } else {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "cannot read config: " << config_path << "\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  const monozero::ParseResult parsed = monozero::parse_config(text);
  if (!parsed.ok()) {
    std::cerr << monozero::format_issues(parsed.issues);
    return 2;
  }
  if (parsed.config->kind != spec->kind) {
    std::cerr << "config kind '" << monozero::to_string(parsed.config->kind)
              << "' does not match subcommand '" << spec->name << "'\n";
    return 2;
  }

  monozero::CliOverrides overrides;
  if (sub->count("--seed")) overrides.seed = seed;
  if (sub->count("--max-iter")) overrides.max_iter = max_iter;
  if (sub->count("--tol")) overrides.tol = tol;
  if (sub->count("--format")) overrides.format = format;
  overrides.out_dir = out_dir;

  return monozero::run(monozero::apply_overrides(*parsed.config, overrides), std::cout);
}
