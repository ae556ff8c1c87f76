#pragma once

#include <stdexcept>
#include <cstdint>
#include <string>
#include <vector>

#include "parplan/bitset.hpp"
#include "parplan/extended_int.hpp"
#include "parplan/task.hpp"

namespace parplan {

enum class GraphMode { Parallel, Serial };

enum class StopCondition {
  GoalsNonMutex,  // first level where every goal is present and goals are pairwise non-mutex
  LevelOff,
};

class GoalsUnreachable : public std::runtime_error {
 public:
  explicit GoalsUnreachable(const std::string &w) : std::runtime_error(w) {}
};

// Leveled GraphPlan structure.  Action nodes are dense: ids [0, A) are the
// task's ground actions and A + p is the noop of atom p.
//
// Level k has a proposition layer; level k >= 1 also has the action layer
// whose effects form it.  Mutexes are binary only.  Queries past the built
// horizon of a graph that has not leveled off answer horizon + 1.
class PlanningGraph {
 public:
  static PlanningGraph build(const PlanningTask &task, GraphMode mode,
                             StopCondition stop = StopCondition::GoalsNonMutex);

  GraphMode mode() const { return mode_; }
  bool leveled_off() const { return leveled_off_; }
  // index of the last proposition layer
  int horizon() const { return static_cast<int>(prop_layers_.size()) - 1; }

  std::size_t num_atoms() const { return num_atoms_; }
  std::size_t num_action_nodes() const { return num_actions_ + num_atoms_; }
  bool is_noop(int node) const { return node >= static_cast<int>(num_actions_); }

  LevelValue lev(AtomId p) const;
  LevelValue lev(const AtomSet &s) const;
  LevelValue pair_level(AtomId p, AtomId q) const;
  // max over pairs of s of delta
  LevelValue max_delta(const AtomSet &s) const;
  // lev({p,q}) - max(lev(p), lev(q)); 0 for p == q
  LevelValue delta(AtomId p, AtomId q) const;

  const Bitset &props(int level) const { return prop_layers_[level]; }
  const Bitset &actions(int level) const { return action_layers_[level]; }
  bool prop_mutex(int level, AtomId p, AtomId q) const { return prop_mutex_[level].test(p, q); }
  bool action_mutex(int level, int a, int b) const { return action_mutex_[level].test(a, b); }
  const BitMatrix &prop_mutexes(int level) const { return prop_mutex_[level]; }
  const BitMatrix &action_mutexes(int level) const { return action_mutex_[level]; }

  // First action layer containing the node, or -1.
  int action_level(int node) const { return first_action_level_[node]; }

  std::string dump(const PlanningTask &task) const;

 private:
  PlanningGraph() = default;

  static PlanningGraph build_layers(const PlanningTask &task, GraphMode mode, StopCondition stop);
  bool check_level_off() const;
  LevelValue past_horizon() const;
  // first level holding p and q together without a mutex, for all pairs
  void index_pairs();

  static constexpr std::uint16_t kNoPairLevel = 0xFFFF;

  GraphMode mode_ = GraphMode::Parallel;
  bool leveled_off_ = false;
  std::size_t num_atoms_ = 0;
  std::size_t num_actions_ = 0;

  std::vector<Bitset> prop_layers_;
  std::vector<BitMatrix> prop_mutex_;
  // index 0 is an empty placeholder so that action layer k feeds prop layer k
  std::vector<Bitset> action_layers_;
  std::vector<BitMatrix> action_mutex_;

  BitMatrix interference_;
  std::vector<int> first_level_;
  std::vector<int> first_action_level_;
  std::vector<std::uint16_t> pair_first_;  // num_atoms x num_atoms
  std::vector<char> mutex_free_;           // atom never appears in a mutex pair
};

}  // namespace parplan
