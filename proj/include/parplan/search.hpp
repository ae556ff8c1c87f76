#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "parplan/heuristics.hpp"
#include "parplan/plan.hpp"
#include "parplan/planning_graph.hpp"
#include "parplan/pushup.hpp"
#include "parplan/task.hpp"

namespace parplan {

enum class PushupMode { Off, Default, Aggressive };

struct SearchConfig {
  double weight = 5.0;
  bool fattening = true;
  PushupMode pushup = PushupMode::Default;
  GraphMode graph_mode = GraphMode::Parallel;
  StopCondition stop = StopCondition::GoalsNonMutex;
  long node_budget = 1'000'000;
  double time_budget = 300.0;  // seconds
  bool trace = false;
};

// Throws std::invalid_argument on weight < 1 or non-positive budgets.
void validate_config(const SearchConfig &config);

struct SearchNode {
  int id = 0;
  AtomSet state;
  std::vector<ActionId> incoming;  // sorted
  int parent = -1;
  int g = 0;
  HeuristicValue h;
  double f = 0.0;
};

struct TraceRecord {
  int node = 0;
  int g = 0;
  HeuristicValue h;
  ActionId pivot = -1;
  int fattened = 0;  // |O|
  int pushup_motions = 0;
  int children = 0;
  bool greedy = false;  // the next node was chosen by greedy descent
};

enum class SearchOutcome { Solved, Exhausted, Budget };

std::string to_string(SearchOutcome o);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Exhausted;
  ParallelPlan plan;
  long expansions = 0;
  long generated = 0;
  long evaluations = 0;
  long pushup_motions = 0;
  double seconds = 0.0;
  std::vector<TraceRecord> trace;
};

// One application of the node-expansion procedure to a state.
struct Expansion {
  struct Child {
    AtomSet state;
    std::vector<ActionId> incoming;  // sorted
    HeuristicValue h;
    bool fattened = false;
  };
  std::vector<Child> children;  // single-action children by action id, then the fattened child
  ActionId pivot = -1;
  std::vector<ActionId> fattened_set;  // O, in admission order
};

class RegressionSearch {
 public:
  RegressionSearch(const PlanningTask &task, const PlanningGraph &graph, SearchConfig config = {});

  SearchResult run();

  Expansion parexand(const AtomSet &s);
  HeuristicValue heuristic(const AtomSet &s) { return evaluator_.adjsum2m(s); }

  // Node access, valid after run() or the node helpers below.
  const std::vector<SearchNode> &nodes() const { return nodes_; }
  int add_root();
  int add_node(int parent, AtomSet state, std::vector<ActionId> incoming,
               std::optional<HeuristicValue> h = std::nullopt);
  BranchSlice branch_of(int node) const;
  // Applies pushup to the branch ending at node; returns the node to expand
  // next (node itself when nothing moved).  Aggressive mode also expands
  // every rebuilt non-leaf node.
  int pushup(int node, PushupMode mode, int *motions = nullptr);
  ParallelPlan plan_to(int node) const;

 private:
  struct StateInfo {
    int best_g = 0;
    bool expanded = false;
  };
  struct StateHash {
    std::size_t operator()(const AtomSet &s) const noexcept;
  };

  void expand(int node, Expansion &out, std::vector<int> &created);
  bool register_state(const AtomSet &s, int g);

  const PlanningTask &task_;
  const PlanningGraph &graph_;
  SearchConfig config_;
  HeuristicEvaluator evaluator_;
  std::vector<SearchNode> nodes_;
  std::unordered_map<AtomSet, StateInfo, StateHash> states_;
  struct OpenEntry {
    double f;
    int h;
    int id;
    bool operator>(const OpenEntry &o) const {
      if (f != o.f) return f > o.f;
      if (h != o.h) return h > o.h;
      return id > o.id;
    }
  };
  std::vector<OpenEntry> open_;  // min-heap under operator>
  long expansions_ = 0;
  long generated_ = 0;
};

// Grounded task + graph + search in one call.
SearchResult search(const PlanningTask &task, const PlanningGraph &graph, const SearchConfig &config = {});

}  // namespace parplan
