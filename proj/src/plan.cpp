#include "parplan/plan.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace parplan {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> sorted_names(const PlanningTask &task, const std::vector<ActionId> &step) {
  std::vector<std::string> names;
  for (ActionId a : step) names.push_back(task.actions[a].name);
  std::sort(names.begin(), names.end());
  return names;
}

// "name(a,b)" with arbitrary spacing and case -> canonical display form
std::string canonical_call(std::string_view raw, int line) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  auto open = s.find('(');
  if (open == std::string::npos || open == 0 || s.back() != ')')
    throw PlanFormatError("malformed action '" + std::string(raw) + "'", line);
  return s;
}

// "(name a b)" -> "name(a,b)"
std::string ipc_call(std::string_view raw, int line) {
  std::string inner = trim(raw.substr(1, raw.size() - 2));
  std::istringstream is(inner);
  std::vector<std::string> parts;
  for (std::string tok; is >> tok;) {
    std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) { return std::tolower(c); });
    parts.push_back(tok);
  }
  if (parts.empty()) throw PlanFormatError("empty action", line);
  return format_call(parts[0], std::vector<std::string>(parts.begin() + 1, parts.end()));
}

ActionId lookup(const PlanningTask &task, const std::string &name, int line) {
  ActionId id = task.find_action(name);
  if (id < 0) throw PlanFormatError("unknown ground action " + name, line);
  return id;
}

}  // namespace

int ParallelPlan::action_count() const {
  int n = 0;
  for (const auto &s : steps) n += static_cast<int>(s.size());
  return n;
}

std::vector<ActionId> ParallelPlan::linearize(const PlanningTask &task) const {
  std::vector<ActionId> out;
  for (const auto &step : steps)
    for (const auto &name : sorted_names(task, step)) out.push_back(task.find_action(name));
  return out;
}

ParallelPlan ParallelPlan::sequential(const std::vector<ActionId> &actions) {
  ParallelPlan p;
  for (ActionId a : actions) p.steps.push_back({a});
  return p;
}

std::string format_plan(const PlanningTask &task, const ParallelPlan &plan) {
  std::ostringstream os;
  os << ";; makespan=" << plan.makespan() << " actions=" << plan.action_count() << '\n';
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    os << i + 1 << ':';
    const auto names = sorted_names(task, plan.steps[i]);
    for (std::size_t j = 0; j < names.size(); ++j) os << (j ? " | " : " ") << names[j];
    os << '\n';
  }
  return os.str();
}

ParallelPlan parse_plan(const PlanningTask &task, std::string_view text) {
  ParallelPlan plan;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  int last_index = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.starts_with(";")) {
      continue;  // header counts are informative; the steps are authoritative
    }
    if (line.front() == '(') {
      if (line.back() != ')') throw PlanFormatError("unbalanced parentheses", lineno);
      plan.steps.push_back({lookup(task, ipc_call(line, lineno), lineno)});
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw PlanFormatError("expected '<step>: action | ...'", lineno);
    const std::string index = trim(std::string_view(line).substr(0, colon));
    if (index.empty() || !std::all_of(index.begin(), index.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw PlanFormatError("bad step index '" + index + "'", lineno);
    // skipped indices denote empty steps, which are dropped
    const int step_index = std::stoi(index);
    if (step_index <= last_index) throw PlanFormatError("step index " + index + " out of sequence", lineno);
    last_index = step_index;
    std::vector<ActionId> step;
    std::string rest = line.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t bar = rest.find('|', start);
      std::string part = trim(std::string_view(rest).substr(start, bar == std::string::npos ? std::string::npos : bar - start));
      if (!part.empty()) step.push_back(lookup(task, canonical_call(part, lineno), lineno));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (step.empty()) throw PlanFormatError("empty step", lineno);
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

}  // namespace parplan
