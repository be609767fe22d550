#include "streamverify/frontend.hpp"
#include "streamverify/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sv = streamverify;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Common {
  std::string spec_path;
  std::vector<std::string> constants;
  std::string solver;
  double timeout = 60;
  bool json = false;

  sv::ConstantBindings bindings() const {
    sv::ConstantBindings b;
    for (const auto& c : constants) {
      auto eq = c.find('=');
      if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--const", "expected NAME=VALUE, got " + c);
      b[c.substr(0, eq)] = c.substr(eq + 1);
    }
    return b;
  }

  sv::SolverConfig solver_config() const {
    sv::SolverConfig cfg = sv::SolverConfig::from_environment();
    if (!solver.empty()) {
      cfg.executable = solver;
      cfg.args = sv::SolverConfig::default_args(solver);
    }
    cfg.timeout_seconds = timeout;
    return cfg;
  }

  sv::Specification load() const { return sv::load_specification(read_file(spec_path), bindings()); }
};

void add_common(CLI::App* cmd, Common& c, bool solver_flags) {
  cmd->add_option("spec", c.spec_path, "Specification file")->required();
  cmd->add_option("--const", c.constants, "Bind a named constant, NAME=VALUE");
  if (solver_flags) {
    cmd->add_option("--solver", c.solver, "Solver executable (default: $STREAMVERIFY_SOLVER or z3)");
    cmd->add_option("--timeout", c.timeout, "Per-query timeout in seconds")->check(CLI::PositiveNumber);
  }
}

void print_json(nlohmann::json j) { std::cout << j.dump(2) << "\n"; }

int run_verify(const Common& c, bool check_div, bool check_vacuity, unsigned jobs) {
  sv::Specification spec = c.load();
  sv::VerifyOptions options;
  options.solver = c.solver_config();
  options.check_div = check_div;
  options.check_vacuity = check_vacuity;
  options.jobs = jobs;
  sv::VerificationReport report = sv::verify(spec, options);

  if (c.json) {
    nlohmann::json j = sv::to_json(report, spec);
    j["spec"] = c.spec_path;
    print_json(std::move(j));
  } else {
    std::cout << "window: w_p=" << report.window.past << " w_f=" << report.window.future << "\n";
    for (const auto& o : report.obligations) {
      std::printf("  %-24s %-8s %.2fs\n", o.name.c_str(), std::string(sv::status_name(o.result.status)).c_str(),
                  o.result.seconds);
      std::fflush(stdout);
      if (o.result.status == sv::CheckStatus::Unknown) std::cout << "    reason: " << o.result.reason << "\n";
    }
    for (const auto& o : report.obligations)
      if (o.result.model) std::cout << "\n" << sv::render_counterexample(*o.result.model, spec);
    std::cout << report.valid_count() << "/" << report.obligations.size() << " obligations valid\n";
    std::cout << sv::verdict_name(report.verdict) << "\n";
  }
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  switch (report.verdict) {
    case sv::Verdict::Verified: return 0;
    case sv::Verdict::Refuted: return 1;
    case sv::Verdict::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int run_check_trace(const Common& c, const std::string& trace_path, const std::string& mode) {
  sv::Specification spec = c.load();
  check_well_formed(sv::build_graph(spec));
  sv::Trace trace = sv::read_trace_csv(read_file(trace_path), spec);
  sv::TraceReport report;
  if (mode == "smt") {
    try {
      report = sv::check_trace_smt(spec, trace, c.solver_config());
    } catch (const sv::TraceError&) {
      throw;
    } catch (const std::runtime_error& e) {
      std::cerr << "solver error: " << e.what() << "\n";
      return kExitUnknown;
    }
  } else {
    report = sv::check_trace_interpret(spec, trace);
  }
  if (c.json) {
    nlohmann::json j = sv::to_json(report);
    j["spec"] = c.spec_path;
    j["trace"] = trace_path;
    j["mode"] = mode;
    print_json(std::move(j));
  } else {
    for (const auto& t : report.triggers)
      std::cout << "position " << t.position << ": " << (t.message.empty() ? "trigger fired" : t.message) << "\n";
    for (const auto& v : report.verdicts) {
      std::cout << "<" << v.id << "> ";
      if (v.respected()) {
        std::cout << "respected\n";
        continue;
      }
      std::cout << "violated at position";
      for (auto p : v.violations) std::cout << " " << p;
      std::cout << "\n";
    }
    std::cout << (report.respected() ? "respected" : "violated") << "\n";
  }
  return report.respected() ? 0 : 1;
}

int run_dump(const Common& c, const std::string& out_dir, bool check_div, std::vector<std::int64_t> finite,
             const std::string& finite_mode) {
  sv::Specification spec = c.load();
  check_well_formed(sv::build_graph(spec));
  sv::VerifyOptions options;
  options.check_div = check_div;
  std::vector<sv::ProofObligation> obligations = sv::verification_obligations(spec, options);
  auto mode = sv::parse_finite_mode(finite_mode);
  for (auto n : finite) obligations.push_back(sv::finite_obligation(spec, n, *mode));
  std::filesystem::create_directories(out_dir);
  const std::string logic = c.solver_config().logic;
  for (const auto& ob : obligations) {
    auto path = std::filesystem::path(out_dir) / (ob.name() + ".smt2");
    std::ofstream out(path);
    out << ob.script(logic);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    std::cout << path.string() << "\n";
  }
  return 0;
}

int run_graph(const Common& c) {
  sv::Specification spec = c.load();
  sv::DependencyGraph g = sv::build_graph(spec);
  std::cout << sv::to_dot(g, spec);
  if (auto walk = sv::find_zero_walk(g)) {
    std::cerr << "warning: ill-formed: " << walk->describe() << "\n";
    return kExitUsage;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static verification of assumptions and assertions in stream specifications"};
  app.require_subcommand(1);

  Common common;
  bool check_div = false, check_vacuity = false;
  unsigned jobs = 1;
  auto* verify = app.add_subcommand("verify", "Prove that every assertion holds whenever its assumptions hold");
  add_common(verify, common, true);
  verify->add_flag("--check-div", check_div, "Also prove that divisors are nonzero");
  verify->add_flag("--check-vacuity", check_vacuity, "Warn when assumptions and hypotheses are contradictory");
  verify->add_option("--jobs", jobs, "Concurrent solver sessions")->check(CLI::PositiveNumber);
  verify->add_flag("--json", common.json, "Machine-readable summary");

  std::string trace_path, mode = "interpret";
  auto* check_trace = app.add_subcommand("check-trace", "Check annotations on a recorded CSV trace");
  add_common(check_trace, common, true);
  check_trace->add_option("trace", trace_path, "CSV trace")->required();
  check_trace->add_option("--mode", mode, "interpret or smt")->check(CLI::IsMember({"interpret", "smt"}));
  check_trace->add_flag("--json", common.json, "Machine-readable summary");

  std::string out_dir, finite_mode = "closed";
  std::vector<std::int64_t> finite;
  auto* dump = app.add_subcommand("dump-smt", "Write every proof obligation as an SMT-LIB script");
  add_common(dump, common, false);
  dump->add_option("outdir", out_dir, "Output directory")->required();
  dump->add_flag("--check-div", check_div, "Include division checks");
  dump->add_option("--finite", finite, "Also write the finite-trace obligation for window length N");
  dump->add_option("--finite-mode", finite_mode, "literal, global or closed")
      ->check(CLI::IsMember({"literal", "global", "closed"}));

  auto* graph = app.add_subcommand("graph", "Print the dependency graph in Graphviz format");
  add_common(graph, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(common, check_div, check_vacuity, jobs);
    if (check_trace->parsed()) return run_check_trace(common, trace_path, mode);
    if (dump->parsed()) return run_dump(common, out_dir, check_div, finite, finite_mode);
    if (graph->parsed()) return run_graph(common);
  } catch (const sv::SpecError& e) {
    std::cerr << common.spec_path << ":" << e.what() << "\n";
    return kExitUsage;
  } catch (const sv::TraceError& e) {
    std::cerr << trace_path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const sv::EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
