#pragma once

// Brute-force reference computations for desk-scale tasks.  Everything here
// works on forward progression over explicit states and never calls into the
// planner's regression, heuristic or validator code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "parplan/pddl.hpp"
#include "parplan/task.hpp"

#ifndef PARPLAN_BENCHMARK_DIR
#error "PARPLAN_BENCHMARK_DIR must point at the bundled benchmarks"
#endif

namespace oracle {

using parplan::ActionId;
using parplan::AtomId;
using parplan::GroundAction;
using parplan::PlanningTask;

inline std::string bench(const std::string &rel) { return std::string(PARPLAN_BENCHMARK_DIR) + "/" + rel; }

inline PlanningTask load(const std::string &domain_rel, const std::string &problem_rel) {
  auto d = parplan::parse_domain(parplan::read_file(bench(domain_rel)));
  auto p = parplan::parse_problem(parplan::read_file(bench(problem_rel)), d);
  return parplan::ground(d, p);
}

inline PlanningTask from_text(const std::string &domain, const std::string &problem) {
  auto d = parplan::parse_domain(domain);
  return parplan::ground(d, parplan::parse_problem(problem, d));
}

struct DeskTask {
  std::string name;
  std::string domain;
  std::string problem;
};

inline std::vector<DeskTask> desk_tasks() {
  return {
      {"two-switch", "unit/two-switch-domain.pddl", "unit/two-switch.pddl"},
      {"chain", "unit/chain-domain.pddl", "unit/chain.pddl"},
      {"micro-gripper-1", "micro/gripper-domain.pddl", "micro/micro-gripper-1.pddl"},
      {"micro-gripper-2", "micro/gripper-domain.pddl", "micro/micro-gripper-2.pddl"},
      {"micro-gripper-3", "micro/gripper-domain.pddl", "micro/micro-gripper-3.pddl"},
      {"micro-logistics-1", "micro/logistics-domain.pddl", "micro/micro-logistics-1.pddl"},
      {"micro-logistics-2", "micro/logistics-domain.pddl", "micro/micro-logistics-2.pddl"},
      {"micro-logistics-3", "micro/logistics-domain.pddl", "micro/micro-logistics-3.pddl"},
  };
}

using State = std::uint64_t;  // desk-scale tasks have at most 64 atoms

inline State mask(const parplan::AtomSet &atoms) {
  State m = 0;
  for (AtomId p : atoms) m |= State{1} << p;
  return m;
}

struct Masks {
  State prec = 0, add = 0, del = 0;
};

inline std::vector<Masks> masks(const PlanningTask &task) {
  std::vector<Masks> out;
  for (const auto &a : task.actions) out.push_back({mask(a.prec), mask(a.add), mask(a.del)});
  return out;
}

// Effects of one action disjoint from everything the other reads or writes.
inline bool non_interfering(const Masks &x, const Masks &y) {
  const State ex = x.add | x.del;
  const State ey = y.add | y.del;
  return (ex & (y.prec | ey)) == 0 && (ey & (x.prec | ex)) == 0;
}

inline State apply(State s, const Masks &m) { return (s & ~m.del) | m.add; }

// All non-empty sets of pairwise non-interfering actions applicable in s,
// as bitmasks over action indices.
inline std::vector<std::vector<ActionId>> parallel_steps(const std::vector<Masks> &acts, State s) {
  std::vector<ActionId> applicable;
  for (ActionId a = 0; a < static_cast<ActionId>(acts.size()); ++a)
    if ((acts[a].prec & ~s) == 0) applicable.push_back(a);
  std::vector<std::vector<ActionId>> out;
  std::vector<ActionId> cur;
  auto rec = [&](auto &&self, std::size_t from) -> void {
    for (std::size_t i = from; i < applicable.size(); ++i) {
      const ActionId a = applicable[i];
      bool ok = true;
      for (ActionId b : cur) ok = ok && non_interfering(acts[a], acts[b]);
      if (!ok) continue;
      cur.push_back(a);
      out.push_back(cur);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline State apply_step(State s, const std::vector<Masks> &acts, const std::vector<ActionId> &step) {
  State del = 0, add = 0;
  for (ActionId a : step) {
    del |= acts[a].del;
    add |= acts[a].add;
  }
  return (s & ~del) | add;
}

struct Reach {
  // state -> BFS depth
  std::map<State, int> depth;
  // atom -> first depth at which some reached state contains it (-1: never)
  std::vector<int> atom_depth;
  std::optional<int> goal_depth;
};

// Breadth-first search from the initial state.  parallel=true steps over
// sets of pairwise non-interfering actions, otherwise over single actions.
inline Reach explore(const PlanningTask &task, bool parallel) {
  const auto acts = masks(task);
  const State goal = mask(task.goal);
  Reach r;
  r.atom_depth.assign(task.num_atoms(), -1);
  std::queue<State> q;
  const State init = mask(task.initial_state);
  r.depth[init] = 0;
  q.push(init);
  while (!q.empty()) {
    const State s = q.front();
    q.pop();
    const int d = r.depth[s];
    for (std::size_t p = 0; p < task.num_atoms(); ++p)
      if ((s >> p & 1) && r.atom_depth[p] < 0) r.atom_depth[p] = d;
    if (!r.goal_depth && (goal & ~s) == 0) r.goal_depth = d;
    std::vector<State> next;
    if (parallel) {
      for (const auto &step : parallel_steps(acts, s)) next.push_back(apply_step(s, acts, step));
    } else {
      for (const auto &m : acts)
        if ((m.prec & ~s) == 0) next.push_back(apply(s, m));
    }
    for (State n : next)
      if (r.depth.emplace(n, d + 1).second) q.push(n);
  }
  return r;
}

inline std::optional<int> optimal_makespan(const PlanningTask &task) { return explore(task, true).goal_depth; }
inline std::optional<int> optimal_length(const PlanningTask &task) { return explore(task, false).goal_depth; }

// Forward execution of a step sequence; nullopt if some precondition fails.
inline std::optional<State> execute(const PlanningTask &task, const std::vector<std::vector<ActionId>> &steps,
                                    bool require_independent = true) {
  const auto acts = masks(task);
  State s = mask(task.initial_state);
  for (const auto &step : steps) {
    for (std::size_t i = 0; i < step.size(); ++i) {
      if ((acts[step[i]].prec & ~s) != 0) return std::nullopt;
      if (require_independent)
        for (std::size_t j = i + 1; j < step.size(); ++j)
          if (step[i] == step[j] || !non_interfering(acts[step[i]], acts[step[j]])) return std::nullopt;
    }
    s = apply_step(s, acts, step);
  }
  return s;
}

inline bool solves(const PlanningTask &task, const std::vector<std::vector<ActionId>> &steps) {
  auto s = execute(task, steps);
  return s && (mask(task.goal) & ~*s) == 0;
}

inline std::multiset<ActionId> multiset_of(const std::vector<std::vector<ActionId>> &steps) {
  std::multiset<ActionId> m;
  for (const auto &s : steps) m.insert(s.begin(), s.end());
  return m;
}

// Fewest actions reaching a superset of goal when deletes are ignored, by
// breadth-first search over delete-free states.
inline std::optional<int> relaxed_optimal(const PlanningTask &task, const parplan::AtomSet &goal) {
  const auto acts = masks(task);
  const State g = mask(goal);
  std::map<State, int> depth;
  std::queue<State> q;
  depth[mask(task.initial_state)] = 0;
  q.push(mask(task.initial_state));
  while (!q.empty()) {
    const State s = q.front();
    q.pop();
    if ((g & ~s) == 0) return depth[s];
    for (const auto &m : acts) {
      if ((m.prec & ~s) != 0) continue;
      const State n = s | m.add;
      if (depth.emplace(n, depth[s] + 1).second) q.push(n);
    }
  }
  return std::nullopt;
}

// Every subset of every reachable state, as sorted atom sets.
inline std::vector<parplan::AtomSet> reachable_subgoal_sets(const PlanningTask &task) {
  std::set<State> subsets;
  for (const auto &[s, d] : explore(task, true).depth) {
    for (State sub = s;; sub = (sub - 1) & s) {
      subsets.insert(sub);
      if (sub == 0) break;
    }
  }
  std::vector<parplan::AtomSet> out;
  for (State m : subsets) {
    parplan::AtomSet a;
    for (std::size_t p = 0; p < task.num_atoms(); ++p)
      if (m >> p & 1) a.push_back(static_cast<AtomId>(p));
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace oracle
