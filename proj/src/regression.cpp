#include "parplan/regression.hpp"

#include <algorithm>

namespace parplan {

std::vector<ActionId> relevant_actions(const PlanningTask &task, const AtomSet &s) {
  std::vector<ActionId> out;
  for (AtomId p : s)
    for (ActionId a : task.achievers[p])
      if (!intersects(task.actions[a].del, s)) out.push_back(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_relevant(const GroundAction &a, const AtomSet &s) {
  return intersects(a.add, s) && !intersects(a.del, s);
}

AtomSet regress(const AtomSet &s, const GroundAction &a) {
  return set_union(set_difference(s, a.add), a.prec);
}

AtomSet regress_set(const PlanningTask &task, const AtomSet &s, std::span<const ActionId> actions) {
  AtomSet removed;
  AtomSet needed;
  for (ActionId id : actions) {
    removed = set_union(removed, task.actions[id].add);
    needed = set_union(needed, task.actions[id].prec);
  }
  return set_union(set_difference(s, removed), needed);
}

bool independent(const GroundAction &a1, const GroundAction &a2) {
  if (a1.id == a2.id) return false;
  auto touches = [](const GroundAction &x, const GroundAction &y) {
    for (const AtomSet *eff : {&x.add, &x.del})
      if (intersects(*eff, y.prec) || intersects(*eff, y.add) || intersects(*eff, y.del)) return true;
    return false;
  };
  return !touches(a1, a2) && !touches(a2, a1);
}

bool independent_of_all(const PlanningTask &task, ActionId a, std::span<const ActionId> others) {
  return std::all_of(others.begin(), others.end(),
                     [&](ActionId o) { return independent(task.actions[a], task.actions[o]); });
}

}  // namespace parplan
