#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parplan/plan.hpp"
#include "parplan/task.hpp"

namespace parplan {

enum class FailureReason { PreconditionUnsatisfied, StepNotIndependent, GoalUnachieved };

std::string to_string(FailureReason r);

struct ValidationFailure {
  int step = 0;  // 1-based; makespan + 1 for goal failures
  FailureReason reason;
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  int makespan = 0;
  int action_count = 0;
  std::vector<ValidationFailure> failures;

  std::string summary() const;
};

// Forward simulation of the plan from the initial state.  Shares no code with
// the regression machinery so it can serve as an oracle for it.
ValidationReport validate(const PlanningTask &task, const ParallelPlan &plan, std::uint64_t seed = 0x5eed);

}  // namespace parplan
