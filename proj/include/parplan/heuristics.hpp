#pragma once

#include <optional>
#include <vector>

#include "parplan/extended_int.hpp"
#include "parplan/planning_graph.hpp"
#include "parplan/task.hpp"

namespace parplan {

// Support structure extracted backwards over the graph with mutexes ignored.
// steps[k-1] holds the actions chosen at action layer k.
struct RelaxedPlan {
  std::vector<std::vector<ActionId>> steps;
  // Subgoals first appearing past the horizon of a truncated graph.  Each is
  // charged horizon + 1 actions (its optimistic level) with no support
  // extracted.
  int beyond_horizon = 0;
  int length = 0;
};

HeuristicValue h_sum(const PlanningGraph &graph, const AtomSet &s);

// nullopt when some member of s is unreachable (infinite level).
std::optional<RelaxedPlan> extract_relaxed_plan(const PlanningTask &task, const PlanningGraph &graph,
                                                const AtomSet &s);

HeuristicValue h_adjsum2m(const PlanningTask &task, const PlanningGraph &graph, const AtomSet &s);

// Reusable evaluator for the search loop; keeps scratch buffers between
// calls, so one instance must not be shared across threads.
class HeuristicEvaluator {
 public:
  HeuristicEvaluator(const PlanningTask &task, const PlanningGraph &graph);

  HeuristicValue adjsum2m(const AtomSet &s);
  std::optional<RelaxedPlan> relaxed_plan(const AtomSet &s);
  // Non-noop action count of the relaxed plan, or infinity.
  HeuristicValue relaxed_plan_length(const AtomSet &s);
  HeuristicValue max_delta(const AtomSet &s) const;

  std::size_t evaluations() const { return evaluations_; }
  const PlanningGraph &graph() const { return graph_; }

 private:
  bool extract(const AtomSet &s, RelaxedPlan *out, int *length);

  const PlanningTask &task_;
  const PlanningGraph &graph_;
  std::vector<int> prec_level_sum_;  // sum of lev over preconditions
  std::vector<int> prec_level_max_;
  std::vector<std::vector<AtomId>> goals_at_;
  std::vector<unsigned> goal_stamp_;
  std::vector<unsigned> achieved_stamp_;
  unsigned stamp_ = 0;
  std::size_t evaluations_ = 0;
};

}  // namespace parplan
