#include "parplan/validator.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace parplan {

std::string to_string(FailureReason r) {
  switch (r) {
    case FailureReason::PreconditionUnsatisfied: return "precondition-unsatisfied";
    case FailureReason::StepNotIndependent: return "step-not-independent";
    case FailureReason::GoalUnachieved: return "goal-unachieved";
  }
  return "?";
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (valid ? "valid" : "invalid") << " makespan=" << makespan << " actions=" << action_count << '\n';
  for (const auto &f : failures) {
    os << "  step " << f.step << ": " << to_string(f.reason);
    if (!f.detail.empty()) os << " (" << f.detail << ')';
    os << '\n';
  }
  return os.str();
}

namespace {

constexpr int kLinearizations = 3;

using State = std::vector<char>;

bool holds(const State &s, const AtomSet &atoms) {
  return std::all_of(atoms.begin(), atoms.end(), [&](AtomId p) { return s[p] != 0; });
}

// Atoms written by one action and read or written by the other.
bool interferes(const GroundAction &x, const GroundAction &y, std::size_t n_atoms) {
  std::vector<char> touched(n_atoms, 0);
  for (AtomId p : y.prec) touched[p] = 1;
  for (AtomId p : y.add) touched[p] = 1;
  for (AtomId p : y.del) touched[p] = 1;
  for (AtomId p : x.add)
    if (touched[p]) return true;
  for (AtomId p : x.del)
    if (touched[p]) return true;
  return false;
}

}  // namespace

ValidationReport validate(const PlanningTask &task, const ParallelPlan &plan, std::uint64_t seed) {
  ValidationReport report;
  report.makespan = plan.makespan();
  report.action_count = plan.action_count();
  std::mt19937_64 rng(seed);
  const std::size_t n = task.num_atoms();
  auto fail = [&](int step, FailureReason reason, std::string detail) {
    report.failures.push_back({step, reason, std::move(detail)});
  };

  State state(n, 0);
  for (AtomId p : task.initial_state) state[p] = 1;

  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const int step = static_cast<int>(i) + 1;
    const auto &ids = plan.steps[i];
    bool step_ok = true;
    for (std::size_t x = 0; x < ids.size() && step_ok; ++x) {
      for (std::size_t y = x + 1; y < ids.size(); ++y) {
        const auto &a = task.actions[ids[x]];
        const auto &b = task.actions[ids[y]];
        if (ids[x] == ids[y] || interferes(a, b, n) || interferes(b, a, n)) {
          fail(step, FailureReason::StepNotIndependent, a.name + " / " + b.name);
          step_ok = false;
          break;
        }
      }
    }
    for (ActionId id : ids) {
      if (!holds(state, task.actions[id].prec)) {
        fail(step, FailureReason::PreconditionUnsatisfied, task.actions[id].name);
        step_ok = false;
      }
    }

    State next = state;
    for (ActionId id : ids)
      for (AtomId p : task.actions[id].del) next[p] = 0;
    for (ActionId id : ids)
      for (AtomId p : task.actions[id].add) next[p] = 1;

    if (step_ok && ids.size() > 1) {
      std::vector<ActionId> order = ids;
      for (int r = 0; r < kLinearizations && step_ok; ++r) {
        std::shuffle(order.begin(), order.end(), rng);
        State s = state;
        for (ActionId id : order) {
          const auto &a = task.actions[id];
          if (!holds(s, a.prec)) {
            step_ok = false;
            break;
          }
          for (AtomId p : a.del) s[p] = 0;
          for (AtomId p : a.add) s[p] = 1;
        }
        if (!step_ok || s != next) {
          fail(step, FailureReason::StepNotIndependent, "linearizations disagree");
          step_ok = false;
        }
      }
    }
    state = std::move(next);
  }

  std::vector<std::string> missing;
  for (AtomId p : task.goal)
    if (!state[p]) missing.push_back(task.atom_name(p));
  if (!missing.empty()) {
    std::string detail;
    for (const auto &m : missing) detail += (detail.empty() ? "" : " ") + m;
    fail(report.makespan + 1, FailureReason::GoalUnachieved, detail);
  }
  report.valid = report.failures.empty();
  return report;
}

}  // namespace parplan
