#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "parplan/plan.hpp"
#include "parplan/task.hpp"
#include "parplan/validator.hpp"

namespace parplan {

// Actions indexed by their position in the source sequence, with ordering
// edges (before, after) between positions.
struct OrderedPlan {
  std::vector<ActionId> actions;
  std::vector<std::pair<int, int>> edges;
};

class InvalidPlanError : public std::invalid_argument {
 public:
  explicit InvalidPlanError(ValidationReport report)
      : std::invalid_argument("input plan is invalid:\n" + report.summary()), report_(std::move(report)) {}
  const ValidationReport &report() const { return report_; }

 private:
  ValidationReport report_;
};

// Keeps i < j iff a_j consumes an atom whose last producer before j is a_i,
// or a_i and a_j are not independent.  Throws InvalidPlanError when the
// sequence does not solve the task.
OrderedPlan deorder(const PlanningTask &task, const std::vector<ActionId> &sequential);

// Earliest-slot list scheduling.  Throws std::logic_error on a cyclic ordering.
ParallelPlan schedule(const PlanningTask &task, OrderedPlan ordered);

// deorder + schedule over the step-then-name linearization of a plan.
ParallelPlan deorder_plan(const PlanningTask &task, const ParallelPlan &plan);

}  // namespace parplan
