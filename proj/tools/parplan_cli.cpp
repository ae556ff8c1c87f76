// Command-line front end: plan, validate, deorder and bench subcommands.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "parplan/deorder.hpp"
#include "parplan/pddl.hpp"
#include "parplan/pipeline.hpp"
#include "parplan/plan.hpp"
#include "parplan/validator.hpp"

namespace {

using namespace parplan;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

struct ConfigFlags {
  std::map<std::string, std::string> values;
  bool trace = false;

  void attach(CLI::App *app) {
    const std::pair<const char *, const char *> options[] = {
        {"graph", "Planning graph used by the heuristic: parallel|serial"},
        {"fatten", "Grow the pivot branch into a parallel step: on|off"},
        {"pushup", "Branch compression before each expansion: off|on|aggressive"},
        {"weight", "Heuristic weight w in f = g + w*h (default 5)"},
        {"stop", "Graph expansion stop rule: goals|leveloff"},
        {"node-budget", "Maximum expansions (default 1000000, env PARPLAN_NODE_BUDGET)"},
        {"time-budget", "Seconds before giving up (default 300, env PARPLAN_TIME_BUDGET)"},
    };
    for (const auto &[name, help] : options) app->add_option(std::string("--") + name, values[name], help);
    app->add_flag("--trace", trace, "Print one JSON record per expansion to stderr");
  }

  SearchConfig resolve() const {
    SearchConfig c = default_config();
    for (const auto &[name, value] : values)
      if (!value.empty()) apply_option(c, name, value);
    c.trace = trace;
    return c;
  }
};

void write_output(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

PlanningTask load_task(const std::string &domain_path, const std::string &problem_path) {
  const Domain domain = parse_domain(read_file(domain_path));
  const Problem problem = parse_problem(read_file(problem_path), domain);
  return ground(domain, problem);
}

void print_trace(const std::vector<TraceRecord> &trace, const PlanningTask &task) {
  for (const auto &r : trace) {
    nlohmann::json j{{"node", r.node},
                     {"g", r.g},
                     {"h", r.h.is_finite() ? nlohmann::json(r.h.value()) : nlohmann::json("inf")},
                     {"pivot", r.pivot >= 0 ? task.actions[r.pivot].name : ""},
                     {"fattened", r.fattened},
                     {"pushup_motions", r.pushup_motions},
                     {"children", r.children},
                     {"greedy", r.greedy}};
    std::cerr << j.dump() << '\n';
  }
}

int cmd_plan(const std::string &domain, const std::string &problem, const ConfigFlags &flags,
             const std::string &out, bool verbose) {
  const SearchConfig config = flags.resolve();
  Solution s = solve_files(domain, problem, config);
  if (s.record.outcome == "invalid-input") {
    std::cerr << "error: " << s.record.message << '\n';
    return kExitInput;
  }
  if (verbose) std::cerr << grounding_summary(s.task, s.grounding);
  if (config.trace) print_trace(s.search.trace, s.task);
  std::cerr << csv_header() << '\n' << csv_row(s.record) << '\n';
  if (s.search.outcome != SearchOutcome::Solved) return kExitFailed;
  write_output(out, format_plan(s.task, s.search.plan));
  return kExitOk;
}

int cmd_validate(const std::string &domain, const std::string &problem, const std::string &plan_path) {
  PlanningTask task;
  ParallelPlan plan;
  try {
    task = load_task(domain, problem);
    plan = parse_plan(task, read_file(plan_path));
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const ValidationReport report = validate(task, plan);
  std::cout << report.summary();
  return report.valid ? kExitOk : kExitFailed;
}

int cmd_deorder(const std::string &domain, const std::string &problem, const std::string &plan_path,
                const std::string &out) {
  PlanningTask task;
  ParallelPlan plan;
  try {
    task = load_task(domain, problem);
    plan = parse_plan(task, read_file(plan_path));
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  try {
    write_output(out, format_plan(task, deorder_plan(task, plan)));
  } catch (const InvalidPlanError &e) {
    std::cerr << e.report().summary();
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_bench(const std::string &manifest_path, const std::string &out) {
  std::vector<ManifestRow> rows;
  try {
    rows = parse_manifest(read_file(manifest_path), std::filesystem::path(manifest_path).parent_path().string());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (out.empty() || out == "-") {
    run_manifest(rows, std::cout);
  } else {
    std::ofstream csv(out);
    if (!csv) {
      std::cerr << "error: cannot write " << out << '\n';
      return kExitInput;
    }
    run_manifest(rows, csv);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Parallel regression planner"};
  app.require_subcommand(1);

  std::string domain, problem, plan_file, out, manifest;
  bool verbose = false;
  ConfigFlags flags;

  auto *plan = app.add_subcommand("plan", "Solve a problem and print the parallel plan");
  plan->add_option("domain", domain)->required();
  plan->add_option("problem", problem)->required();
  plan->add_option("-o,--output", out, "Plan file (stdout by default)");
  plan->add_flag("-v,--verbose", verbose, "Print the grounding report");
  flags.attach(plan);

  auto *val = app.add_subcommand("validate", "Check a plan file against a problem");
  val->add_option("domain", domain)->required();
  val->add_option("problem", problem)->required();
  val->add_option("plan", plan_file)->required();

  auto *deo = app.add_subcommand("deorder", "Parallelize a plan by removing unneeded orderings");
  deo->add_option("domain", domain)->required();
  deo->add_option("problem", problem)->required();
  deo->add_option("plan", plan_file)->required();
  deo->add_option("-o,--output", out);

  auto *bench = app.add_subcommand("bench", "Run a manifest and emit CSV");
  bench->add_option("manifest", manifest)->required();
  bench->add_option("-o,--output", out, "CSV file (stdout by default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*plan) return cmd_plan(domain, problem, flags, out, verbose);
    if (*val) return cmd_validate(domain, problem, plan_file);
    if (*deo) return cmd_deorder(domain, problem, plan_file, out);
    if (*bench) return cmd_bench(manifest, out);
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return kExitInput;
}
