#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parplan/task.hpp"

namespace parplan {

// Steps in execution order; actions within a step are unordered.
struct ParallelPlan {
  std::vector<std::vector<ActionId>> steps;

  int makespan() const { return static_cast<int>(steps.size()); }
  int action_count() const;
  // Step by step, each step ordered by action display name.
  std::vector<ActionId> linearize(const PlanningTask &task) const;
  static ParallelPlan sequential(const std::vector<ActionId> &actions);
};

class PlanFormatError : public std::runtime_error {
 public:
  PlanFormatError(const std::string &msg, int line)
      : std::runtime_error("plan line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// ";; makespan=<k> actions=<n>" then "<step>: a(x,y) | b(z)" per step, steps
// 1-based and actions within a step sorted lexicographically.
std::string format_plan(const PlanningTask &task, const ParallelPlan &plan);

// Reads the format above; also accepts IPC-style "(name arg ...)" lines, one
// action per step.
ParallelPlan parse_plan(const PlanningTask &task, std::string_view text);

}  // namespace parplan
