#pragma once

#include <span>
#include <vector>

#include "parplan/task.hpp"

namespace parplan {

// One link of a search branch: a state and the action set regressing its
// parent's state into it.  Element 0 of a slice is the root (goal) with no
// incoming actions.
struct BranchStep {
  AtomSet state;
  std::vector<ActionId> incoming;
};

using BranchSlice = std::vector<BranchStep>;

struct PushupMotion {
  ActionId action;
  int from_depth;
  int to_depth;
};

struct PushupOutcome {
  std::vector<PushupMotion> motions;
  // Shallowest depth whose state or incoming set changed; -1 if nothing moved.
  int first_changed_depth = -1;
  // Steps dropped because their incoming set emptied.
  int removed_steps = 0;
  bool moved() const { return !motions.empty(); }
};

// True iff a adds some atom of ancestor_state, deletes none of it, and is
// independent of every action in leading_out (the ancestor's step toward the
// current node).
bool applicable_to_ancestor(const PlanningTask &task, ActionId a, const AtomSet &ancestor_state,
                            std::span<const ActionId> leading_out);

// Relocates the leaf's incoming actions to the highest step each can join,
// recomputes every state below the first change, and drops a leaf step left
// empty (re-examining the new leaf's incoming set).  The branch is updated in
// place.
PushupOutcome pushup_branch(const PlanningTask &task, BranchSlice &branch);

// Throws std::logic_error unless every link satisfies the regression
// equation with pairwise independent, relevant incoming actions.
void check_branch(const PlanningTask &task, const BranchSlice &branch);

}  // namespace parplan
