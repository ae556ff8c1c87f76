#include "parplan/pushup.hpp"

#include <algorithm>
#include <stdexcept>

#include "parplan/regression.hpp"

namespace parplan {

bool applicable_to_ancestor(const PlanningTask &task, ActionId a, const AtomSet &ancestor_state,
                            std::span<const ActionId> leading_out) {
  return is_relevant(task.actions[a], ancestor_state) && independent_of_all(task, a, leading_out);
}

namespace {

void rebuild_from(const PlanningTask &task, BranchSlice &branch, int depth) {
  for (std::size_t j = depth; j < branch.size(); ++j)
    branch[j].state = regress_set(task, branch[j - 1].state, branch[j].incoming);
}

// One sweep over the leaf's incoming actions in id order.
bool sweep(const PlanningTask &task, BranchSlice &branch, PushupOutcome &out) {
  const int n = static_cast<int>(branch.size()) - 1;
  if (n < 2) return false;
  bool moved = false;
  const std::vector<ActionId> candidates = branch[n].incoming;
  for (ActionId a : candidates) {
    int target = -1;
    for (int k = n - 1; k >= 1; --k) {
      if (!applicable_to_ancestor(task, a, branch[k - 1].state, branch[k].incoming)) break;
      target = k;
    }
    if (target < 0) continue;
    auto &from = branch[n].incoming;
    from.erase(std::find(from.begin(), from.end(), a));
    auto &to = branch[target].incoming;
    to.insert(std::upper_bound(to.begin(), to.end(), a), a);
    rebuild_from(task, branch, target);
    out.motions.push_back({a, n, target});
    out.first_changed_depth = out.first_changed_depth < 0 ? target : std::min(out.first_changed_depth, target);
    moved = true;
  }
  return moved;
}

}  // namespace

PushupOutcome pushup_branch(const PlanningTask &task, BranchSlice &branch) {
  PushupOutcome out;
  for (;;) {
    while (sweep(task, branch, out)) {
    }
    const int n = static_cast<int>(branch.size()) - 1;
    if (n < 1 || !branch[n].incoming.empty()) break;
    // the emptied step regressed nothing, so its parent carries the same state
    branch.pop_back();
    ++out.removed_steps;
  }
  return out;
}

void check_branch(const PlanningTask &task, const BranchSlice &branch) {
  if (branch.empty()) throw std::logic_error("empty branch");
  if (!branch[0].incoming.empty()) throw std::logic_error("root has incoming actions");
  for (std::size_t j = 1; j < branch.size(); ++j) {
    const auto &in = branch[j].incoming;
    if (in.empty()) throw std::logic_error("empty step at depth " + std::to_string(j));
    for (std::size_t x = 0; x < in.size(); ++x) {
      if (!is_relevant(task.actions[in[x]], branch[j - 1].state))
        throw std::logic_error(task.actions[in[x]].name + " not relevant at depth " + std::to_string(j));
      for (std::size_t y = x + 1; y < in.size(); ++y)
        if (!independent(task.actions[in[x]], task.actions[in[y]]))
          throw std::logic_error("dependent actions in step at depth " + std::to_string(j));
    }
    if (regress_set(task, branch[j - 1].state, in) != branch[j].state)
      throw std::logic_error("regression equation violated at depth " + std::to_string(j));
  }
}

}  // namespace parplan
