#pragma once

#include <span>
#include <vector>

#include "parplan/task.hpp"

namespace parplan {

// Actions that add some member of s and delete none, ascending by id.
std::vector<ActionId> relevant_actions(const PlanningTask &task, const AtomSet &s);

bool is_relevant(const GroundAction &a, const AtomSet &s);

// (s \ add(a)) U prec(a)
AtomSet regress(const AtomSet &s, const GroundAction &a);

// (s \ U add(o)) U (U prec(o)) for a pairwise independent set o.
AtomSet regress_set(const PlanningTask &task, const AtomSet &s, std::span<const ActionId> actions);

// Neither action's effects (adds or deletes) touch the other's preconditions
// or effects.  Shared preconditions are allowed; an action is never
// independent of itself.
bool independent(const GroundAction &a1, const GroundAction &a2);

bool independent_of_all(const PlanningTask &task, ActionId a, std::span<const ActionId> others);

}  // namespace parplan
