#include "parplan/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "parplan/pddl.hpp"

namespace parplan {

namespace {

double parse_number(const std::string &name, const std::string &value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw std::invalid_argument("--" + name + ": not a number: " + value);
  return v;
}

bool parse_switch(const std::string &name, const std::string &value) {
  if (value == "on") return true;
  if (value == "off") return false;
  throw std::invalid_argument("--" + name + " expects on|off, got " + value);
}

std::string fmt_weight(double w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

}  // namespace

std::string to_string(GraphMode m) { return m == GraphMode::Parallel ? "parallel" : "serial"; }

std::string to_string(PushupMode m) {
  switch (m) {
    case PushupMode::Off: return "off";
    case PushupMode::Default: return "on";
    case PushupMode::Aggressive: return "aggressive";
  }
  return "?";
}

SearchConfig default_config() {
  SearchConfig c;
  if (const char *v = std::getenv("PARPLAN_NODE_BUDGET")) c.node_budget = static_cast<long>(parse_number("PARPLAN_NODE_BUDGET", v));
  if (const char *v = std::getenv("PARPLAN_TIME_BUDGET")) c.time_budget = parse_number("PARPLAN_TIME_BUDGET", v);
  return c;
}

void apply_option(SearchConfig &c, const std::string &name, const std::string &value) {
  if (name == "graph") {
    if (value == "parallel") c.graph_mode = GraphMode::Parallel;
    else if (value == "serial") c.graph_mode = GraphMode::Serial;
    else throw std::invalid_argument("--graph expects parallel|serial, got " + value);
  } else if (name == "fatten") {
    c.fattening = parse_switch(name, value);
  } else if (name == "pushup") {
    if (value == "off") c.pushup = PushupMode::Off;
    else if (value == "on") c.pushup = PushupMode::Default;
    else if (value == "aggressive") c.pushup = PushupMode::Aggressive;
    else throw std::invalid_argument("--pushup expects off|on|aggressive, got " + value);
  } else if (name == "weight") {
    c.weight = parse_number(name, value);
  } else if (name == "stop") {
    if (value == "goals") c.stop = StopCondition::GoalsNonMutex;
    else if (value == "leveloff") c.stop = StopCondition::LevelOff;
    else throw std::invalid_argument("--stop expects goals|leveloff, got " + value);
  } else if (name == "node-budget") {
    c.node_budget = static_cast<long>(parse_number(name, value));
  } else if (name == "time-budget") {
    c.time_budget = parse_number(name, value);
  } else if (name == "trace") {
    c.trace = value.empty() || parse_switch(name, value);
  } else {
    throw std::invalid_argument("unknown option --" + name);
  }
  validate_config(c);
}

SearchConfig parse_options(const std::vector<std::string> &args, SearchConfig base) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string &arg = args[i];
    if (!arg.starts_with("--")) throw std::invalid_argument("unexpected argument " + arg);
    std::string name = arg.substr(2);
    std::string value;
    if (auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name.resize(eq);
    } else if (name != "trace") {
      if (i + 1 >= args.size()) throw std::invalid_argument("--" + name + " needs a value");
      value = args[++i];
    }
    apply_option(base, name, value);
  }
  return base;
}

std::string fingerprint(const SearchConfig &c) {
  return "graph=" + to_string(c.graph_mode) + ";fatten=" + (c.fattening ? "on" : "off") +
         ";pushup=" + to_string(c.pushup) + ";w=" + fmt_weight(c.weight) +
         ";stop=" + (c.stop == StopCondition::GoalsNonMutex ? "goals" : "leveloff");
}

Solution solve_text(const std::string &domain_text, const std::string &problem_text, const SearchConfig &config) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  Solution s;
  s.record.config = fingerprint(config);
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };
  try {
    const Domain domain = parse_domain(domain_text);
    s.record.domain = domain.name;
    const Problem problem = parse_problem(problem_text, domain);
    s.record.problem = problem.name;
    s.task = ground(domain, problem, &s.grounding);
  } catch (const std::exception &e) {
    s.record.outcome = "invalid-input";
    s.record.message = e.what();
    s.record.wall_time = elapsed();
    return s;
  }
  try {
    const PlanningGraph graph = PlanningGraph::build(s.task, config.graph_mode, config.stop);
    s.search = search(s.task, graph, config);
  } catch (const GoalsUnreachable &) {
    s.search.outcome = SearchOutcome::Exhausted;
  }
  s.record.outcome = to_string(s.search.outcome);
  s.record.expansions = s.search.expansions;
  if (s.search.outcome == SearchOutcome::Solved) {
    s.validation = validate(s.task, s.search.plan);
    if (!s.validation->valid)
      throw std::logic_error("search: emitted plan failed validation\n" + s.validation->summary());
    s.record.makespan = s.search.plan.makespan();
    s.record.actions = s.search.plan.action_count();
  }
  s.record.wall_time = elapsed();
  return s;
}

Solution solve_files(const std::string &domain_path, const std::string &problem_path, const SearchConfig &config) {
  std::string domain_text;
  std::string problem_text;
  try {
    domain_text = read_file(domain_path);
    problem_text = read_file(problem_path);
  } catch (const std::exception &e) {
    Solution s;
    s.record.domain = std::filesystem::path(domain_path).stem().string();
    s.record.problem = std::filesystem::path(problem_path).stem().string();
    s.record.config = fingerprint(config);
    s.record.outcome = "invalid-input";
    s.record.message = e.what();
    return s;
  }
  Solution s = solve_text(domain_text, problem_text, config);
  if (s.record.domain.empty()) s.record.domain = std::filesystem::path(domain_path).stem().string();
  if (s.record.problem.empty()) s.record.problem = std::filesystem::path(problem_path).stem().string();
  return s;
}

std::vector<ManifestRow> parse_manifest(const std::string &text, const std::string &base_dir) {
  std::vector<ManifestRow> rows;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) throw std::invalid_argument("manifest line " + std::to_string(lineno) + ": expected <domain> <problem> [flags]");
    auto resolve = [&](const std::string &p) {
      std::filesystem::path path(p);
      return (path.is_absolute() ? path : std::filesystem::path(base_dir) / path).lexically_normal().string();
    };
    rows.push_back({resolve(tokens[0]), resolve(tokens[1]), {tokens.begin() + 2, tokens.end()}});
  }
  return rows;
}

std::string csv_header() { return "domain,problem,config,outcome,makespan,actions,expansions,wall_time"; }

std::string csv_row(const RunRecord &r) {
  std::ostringstream os;
  os << r.domain << ',' << r.problem << ',' << r.config << ',' << r.outcome << ',';
  if (r.makespan) os << *r.makespan;
  os << ',';
  if (r.actions) os << *r.actions;
  os << ',' << r.expansions << ',' << std::fixed << std::setprecision(3) << r.wall_time;
  return os.str();
}

void run_manifest(const std::vector<ManifestRow> &rows, std::ostream &csv, const SearchConfig &base) {
  csv << csv_header() << '\n';
  for (const auto &row : rows) {
    RunRecord record;
    try {
      const SearchConfig config = parse_options(row.flags, base);
      record = solve_files(row.domain_path, row.problem_path, config).record;
    } catch (const std::invalid_argument &e) {
      record.domain = std::filesystem::path(row.domain_path).stem().string();
      record.problem = std::filesystem::path(row.problem_path).stem().string();
      record.config = "";
      record.outcome = "invalid-input";
      record.message = e.what();
    }
    csv << csv_row(record) << '\n';
    csv.flush();
  }
}

}  // namespace parplan
