#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "parplan/pddl.hpp"

namespace parplan {

using AtomId = int;
using ActionId = int;

// Sorted, duplicate-free set of dense atom ids.
using AtomSet = std::vector<AtomId>;

struct Atom {
  std::string predicate;
  std::vector<std::string> args;
  bool operator==(const Atom &) const = default;
};

// "pred(a,b)"; also the display form of ground actions.
std::string format_call(const std::string &name, const std::vector<std::string> &args);

struct GroundAction {
  ActionId id = 0;
  std::string name;
  std::string schema;
  std::vector<std::string> args;
  AtomSet prec;
  AtomSet add;
  AtomSet del;
};

struct PlanningTask {
  std::string domain_name;
  std::string problem_name;
  std::vector<std::string> objects;
  std::vector<Atom> atoms;
  AtomSet initial_state;
  AtomSet goal;
  std::vector<GroundAction> actions;
  // atom -> actions adding it, ascending by id
  std::vector<std::vector<ActionId>> achievers;

  std::size_t num_atoms() const { return atoms.size(); }
  std::size_t num_actions() const { return actions.size(); }
  std::string atom_name(AtomId a) const;
  // -1 when the atom is unknown to the task
  AtomId find_atom(const Atom &a) const;
  // -1 when no ground action has this display name
  ActionId find_action(const std::string &display_name) const;

  void index();

 private:
  std::unordered_map<std::string, AtomId> atom_index_;
  std::unordered_map<std::string, ActionId> action_index_;
};

struct GroundingReport {
  std::size_t instantiated = 0;
  std::size_t pruned_unreachable = 0;
  std::size_t pruned_noop = 0;
  std::vector<std::string> warnings;
};

// Enumerates every type-consistent instantiation of every schema, keeps those
// whose preconditions are reachable in the delete-free relaxation, and assigns
// dense ids in (schema order, lexicographic argument order).
PlanningTask ground(const Domain &domain, const Problem &problem, GroundingReport *report = nullptr);

std::string grounding_summary(const PlanningTask &task, const GroundingReport &report);

bool is_subset(const AtomSet &sub, const AtomSet &super);
bool intersects(const AtomSet &a, const AtomSet &b);
AtomSet set_union(const AtomSet &a, const AtomSet &b);
AtomSet set_difference(const AtomSet &a, const AtomSet &b);

}  // namespace parplan
