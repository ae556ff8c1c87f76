#include "parplan/deorder.hpp"

#include <algorithm>
#include <set>

#include "parplan/regression.hpp"

namespace parplan {

OrderedPlan deorder(const PlanningTask &task, const std::vector<ActionId> &sequential) {
  auto report = validate(task, ParallelPlan::sequential(sequential));
  if (!report.valid) throw InvalidPlanError(std::move(report));

  OrderedPlan out;
  out.actions = sequential;
  std::set<std::pair<int, int>> edges;
  std::vector<int> last_producer(task.num_atoms(), -1);
  const int n = static_cast<int>(sequential.size());
  for (int j = 0; j < n; ++j) {
    const auto &aj = task.actions[sequential[j]];
    for (AtomId p : aj.prec)
      if (last_producer[p] >= 0) edges.insert({last_producer[p], j});
    for (int i = 0; i < j; ++i)
      if (!independent(task.actions[sequential[i]], aj)) edges.insert({i, j});
    for (AtomId p : aj.add) last_producer[p] = j;
  }
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

namespace {

std::vector<int> assign_steps(int n, const std::vector<std::pair<int, int>> &edges) {
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indegree(n, 0);
  for (auto [i, j] : edges) {
    succ[i].push_back(j);
    ++indegree[j];
  }
  std::vector<int> step(n, 0);
  std::vector<int> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  int seen = 0;
  while (!ready.empty()) {
    const int i = ready.back();
    ready.pop_back();
    ++seen;
    for (int j : succ[i]) {
      step[j] = std::max(step[j], step[i] + 1);
      if (--indegree[j] == 0) ready.push_back(j);
    }
  }
  if (seen != n) throw std::logic_error("ordering contains a cycle");
  return step;
}

}  // namespace

ParallelPlan schedule(const PlanningTask &task, OrderedPlan ordered) {
  const int n = static_cast<int>(ordered.actions.size());
  for (;;) {
    const auto step = assign_steps(n, ordered.edges);
    const int makespan = n ? *std::max_element(step.begin(), step.end()) + 1 : 0;
    std::vector<std::vector<int>> slots(makespan);
    for (int i = 0; i < n; ++i) slots[step[i]].push_back(i);

    bool reinstated = false;
    for (const auto &slot : slots)
      for (std::size_t x = 0; x < slot.size() && !reinstated; ++x)
        for (std::size_t y = x + 1; y < slot.size(); ++y)
          if (!independent(task.actions[ordered.actions[slot[x]]], task.actions[ordered.actions[slot[y]]])) {
            ordered.edges.push_back({std::min(slot[x], slot[y]), std::max(slot[x], slot[y])});
            reinstated = true;
            break;
          }
    if (reinstated) continue;

    ParallelPlan plan;
    for (const auto &slot : slots) {
      std::vector<ActionId> ids;
      for (int i : slot) ids.push_back(ordered.actions[i]);
      std::sort(ids.begin(), ids.end());
      plan.steps.push_back(std::move(ids));
    }
    return plan;
  }
}

ParallelPlan deorder_plan(const PlanningTask &task, const ParallelPlan &plan) {
  return schedule(task, deorder(task, plan.linearize(task)));
}

}  // namespace parplan
