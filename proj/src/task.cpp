#include "parplan/task.hpp"

#include <algorithm>
#include <iterator>

namespace parplan {

std::string format_call(const std::string &name, const std::vector<std::string> &args) {
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += args[i];
  }
  s += ')';
  return s;
}

std::string PlanningTask::atom_name(AtomId a) const {
  return format_call(atoms[a].predicate, atoms[a].args);
}

AtomId PlanningTask::find_atom(const Atom &a) const {
  auto it = atom_index_.find(format_call(a.predicate, a.args));
  return it == atom_index_.end() ? -1 : it->second;
}

ActionId PlanningTask::find_action(const std::string &display_name) const {
  auto it = action_index_.find(display_name);
  return it == action_index_.end() ? -1 : it->second;
}

void PlanningTask::index() {
  atom_index_.clear();
  action_index_.clear();
  for (AtomId a = 0; a < static_cast<AtomId>(atoms.size()); ++a) atom_index_.emplace(atom_name(a), a);
  achievers.assign(atoms.size(), {});
  for (const auto &act : actions) {
    action_index_.emplace(act.name, act.id);
    for (AtomId p : act.add) achievers[p].push_back(act.id);
  }
}

bool is_subset(const AtomSet &sub, const AtomSet &super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool intersects(const AtomSet &a, const AtomSet &b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

AtomSet set_union(const AtomSet &a, const AtomSet &b) {
  AtomSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

AtomSet set_difference(const AtomSet &a, const AtomSet &b) {
  AtomSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace parplan
