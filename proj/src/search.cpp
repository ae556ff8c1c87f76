#include "parplan/search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "parplan/regression.hpp"

namespace parplan {

std::string to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Solved: return "solved";
    case SearchOutcome::Exhausted: return "exhausted";
    case SearchOutcome::Budget: return "budget";
  }
  return "?";
}

void validate_config(const SearchConfig &config) {
  if (!(config.weight >= 1.0)) throw std::invalid_argument("weight must be >= 1");
  if (config.node_budget <= 0) throw std::invalid_argument("node budget must be positive");
  if (!(config.time_budget > 0.0)) throw std::invalid_argument("time budget must be positive");
}

std::size_t RegressionSearch::StateHash::operator()(const AtomSet &s) const noexcept {
  std::size_t h = s.size();
  for (AtomId p : s) h ^= static_cast<std::size_t>(p) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

RegressionSearch::RegressionSearch(const PlanningTask &task, const PlanningGraph &graph, SearchConfig config)
    : task_(task), graph_(graph), config_(config), evaluator_(task, graph) {
  validate_config(config_);
}

namespace {

int level_or_max(const LevelValue &v) { return v.is_finite() ? v.value() : std::numeric_limits<int>::max(); }

int overlap(const AtomSet &a, const AtomSet &b) {
  int n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++n; ++i; ++j; }
  }
  return n;
}

}  // namespace

Expansion RegressionSearch::parexand(const AtomSet &s) {
  Expansion out;
  const auto relevant = relevant_actions(task_, s);

  // hardest subgoal each action supports, for pivot tie-breaking
  auto hardest_supported = [&](ActionId a) {
    int best = -1;
    for (AtomId p : task_.actions[a].add)
      if (std::binary_search(s.begin(), s.end(), p)) best = std::max(best, level_or_max(graph_.lev(p)));
    return best;
  };

  std::size_t pivot_child = 0;
  for (ActionId a : relevant) {
    AtomSet child = regress(s, task_.actions[a]);
    HeuristicValue h = evaluator_.adjsum2m(child);
    if (h.is_infinite()) continue;
    out.children.push_back({std::move(child), {a}, h, false});
    const auto &c = out.children.back();
    if (out.pivot < 0) {
      out.pivot = a;
      pivot_child = out.children.size() - 1;
      continue;
    }
    const auto &best = out.children[pivot_child];
    const ActionId p = out.pivot;
    auto key = [&](ActionId x, HeuristicValue hx) {
      return std::make_tuple(hx, -hardest_supported(x), -overlap(task_.actions[x].prec, s), x);
    };
    if (key(a, c.h) < key(p, best.h)) {
      out.pivot = a;
      pivot_child = out.children.size() - 1;
    }
  }
  if (out.pivot < 0 || !config_.fattening) {
    if (out.pivot >= 0) out.fattened_set = {out.pivot};
    return out;
  }

  std::vector<ActionId> o{out.pivot};
  AtomSet o_prec = task_.actions[out.pivot].prec;
  AtomSet o_add = task_.actions[out.pivot].add;
  HeuristicValue h_o = out.children[pivot_child].h;

  std::vector<AtomId> order(s.begin(), s.end());
  std::stable_sort(order.begin(), order.end(), [&](AtomId x, AtomId y) {
    return level_or_max(graph_.lev(x)) > level_or_max(graph_.lev(y));
  });
  for (AtomId g : order) {
    if (std::binary_search(o_add.begin(), o_add.end(), g)) continue;
    ActionId best = -1;
    HeuristicValue best_h = HeuristicValue::infinity();
    int best_overlap = -1;
    for (ActionId a : task_.achievers[g]) {
      if (!std::binary_search(relevant.begin(), relevant.end(), a)) continue;
      if (!independent_of_all(task_, a, o)) continue;
      std::vector<ActionId> trial = o;
      trial.push_back(a);
      HeuristicValue h = evaluator_.adjsum2m(regress_set(task_, s, trial));
      if (h.is_infinite()) continue;
      const int ov = overlap(task_.actions[a].prec, o_prec);
      if (best < 0 || h < best_h || (h == best_h && ov > best_overlap)) {
        best = a;
        best_h = h;
        best_overlap = ov;
      }
    }
    if (best < 0 || !(best_h < h_o)) continue;
    o.push_back(best);
    o_prec = set_union(o_prec, task_.actions[best].prec);
    o_add = set_union(o_add, task_.actions[best].add);
    h_o = best_h;
  }
  out.fattened_set = o;
  if (o.size() > 1) {
    std::vector<ActionId> sorted = o;
    std::sort(sorted.begin(), sorted.end());
    out.children.push_back({regress_set(task_, s, sorted), sorted, h_o, true});
  }
  return out;
}

bool RegressionSearch::register_state(const AtomSet &s, int g) {
  auto [it, inserted] = states_.try_emplace(s, StateInfo{g, false});
  if (inserted) return true;
  if (g >= it->second.best_g) return false;
  it->second.best_g = g;
  it->second.expanded = false;
  return true;
}

int RegressionSearch::add_root() {
  nodes_.clear();
  states_.clear();
  open_.clear();
  SearchNode root;
  root.state = task_.goal;
  root.h = evaluator_.adjsum2m(root.state);
  root.f = root.h.is_finite() ? config_.weight * root.h.value() : 0.0;
  nodes_.push_back(std::move(root));
  states_[task_.goal] = StateInfo{0, false};
  return 0;
}

int RegressionSearch::add_node(int parent, AtomSet state, std::vector<ActionId> incoming,
                               std::optional<HeuristicValue> h) {
  SearchNode n;
  n.id = static_cast<int>(nodes_.size());
  n.parent = parent;
  n.g = nodes_[parent].g + 1;
  n.h = h ? *h : evaluator_.adjsum2m(state);
  n.f = n.g + (n.h.is_finite() ? config_.weight * n.h.value() : 0.0);
  n.state = std::move(state);
  n.incoming = std::move(incoming);
  nodes_.push_back(std::move(n));
  return nodes_.back().id;
}

BranchSlice RegressionSearch::branch_of(int node) const {
  BranchSlice chain;
  for (int x = node; x >= 0; x = nodes_[x].parent) chain.push_back({nodes_[x].state, nodes_[x].incoming});
  std::reverse(chain.begin(), chain.end());
  return chain;
}

ParallelPlan RegressionSearch::plan_to(int node) const {
  // the leaf's incoming set executes first
  ParallelPlan plan;
  for (int x = node; nodes_[x].parent >= 0; x = nodes_[x].parent) plan.steps.push_back(nodes_[x].incoming);
  return plan;
}

int RegressionSearch::pushup(int node, PushupMode mode, int *motions) {
  if (motions) *motions = 0;
  if (mode == PushupMode::Off || nodes_[node].parent < 0) return node;
  BranchSlice chain = branch_of(node);
  const PushupOutcome outcome = pushup_branch(task_, chain);
  if (!outcome.moved()) return node;
  check_branch(task_, chain);
  if (motions) *motions = static_cast<int>(outcome.motions.size());

  // ancestor above the first changed step is kept; everything below is new
  std::vector<int> path;
  for (int x = node; x >= 0; x = nodes_[x].parent) path.push_back(x);
  std::reverse(path.begin(), path.end());
  const int top = outcome.first_changed_depth;
  int current = path[top - 1];
  std::vector<int> rebuilt;
  for (std::size_t d = top; d < chain.size(); ++d) {
    current = add_node(current, chain[d].state, chain[d].incoming);
    rebuilt.push_back(current);
  }
  register_state(nodes_[current].state, nodes_[current].g);

  if (mode == PushupMode::Aggressive) {
    for (std::size_t i = 0; i + 1 < rebuilt.size(); ++i) {
      Expansion e;
      std::vector<int> created;
      expand(rebuilt[i], e, created);
    }
  }
  return current;
}

void RegressionSearch::expand(int node, Expansion &out, std::vector<int> &created) {
  ++expansions_;
  out = parexand(nodes_[node].state);
  for (auto &child : out.children) {
    const int g = nodes_[node].g + 1;
    if (!register_state(child.state, g)) continue;
    const int id = add_node(node, std::move(child.state), std::move(child.incoming), child.h);
    ++generated_;
    created.push_back(id);
    open_.push_back({nodes_[id].f, nodes_[id].h.value(), id});
    std::push_heap(open_.begin(), open_.end(), std::greater<>{});
  }
}

SearchResult RegressionSearch::run() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  SearchResult result;
  expansions_ = 0;
  generated_ = 0;
  const std::size_t evals_before = evaluator_.evaluations();
  auto finish = [&](SearchOutcome o) {
    result.outcome = o;
    result.expansions = expansions_;
    result.generated = generated_;
    result.evaluations = static_cast<long>(evaluator_.evaluations() - evals_before);
    result.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return result;
  };

  int current = add_root();
  if (nodes_[current].h.is_infinite()) return finish(SearchOutcome::Exhausted);

  while (true) {
    if (current < 0) {
      while (!open_.empty()) {
        std::pop_heap(open_.begin(), open_.end(), std::greater<>{});
        const int id = open_.back().id;
        open_.pop_back();
        const auto &info = states_.at(nodes_[id].state);
        if (info.expanded || nodes_[id].g > info.best_g) continue;
        current = id;
        break;
      }
      if (current < 0) return finish(SearchOutcome::Exhausted);
    }
    if (expansions_ >= config_.node_budget ||
        std::chrono::duration<double>(clock::now() - start).count() > config_.time_budget)
      return finish(SearchOutcome::Budget);

    int motions = 0;
    current = pushup(current, config_.pushup, &motions);
    result.pushup_motions += motions;

    const SearchNode &node = nodes_[current];
    if (is_subset(node.state, task_.initial_state)) {
      result.plan = plan_to(current);
      return finish(SearchOutcome::Solved);
    }
    states_.at(node.state).expanded = true;

    Expansion e;
    std::vector<int> created;
    expand(current, e, created);

    int best = -1;
    for (int id : created) {
      if (best < 0) { best = id; continue; }
      const auto &c = nodes_[id];
      const auto &b = nodes_[best];
      const bool c_par = c.incoming.size() > 1;
      const bool b_par = b.incoming.size() > 1;
      if (c.h < b.h || (c.h == b.h && c_par && !b_par)) best = id;
    }
    const bool greedy = best >= 0 && nodes_[best].h < nodes_[current].h;
    if (config_.trace) {
      result.trace.push_back({current, nodes_[current].g, nodes_[current].h, e.pivot,
                              static_cast<int>(e.fattened_set.size()), motions,
                              static_cast<int>(created.size()), greedy});
    }
    current = greedy ? best : -1;
  }
}

SearchResult search(const PlanningTask &task, const PlanningGraph &graph, const SearchConfig &config) {
  RegressionSearch s(task, graph, config);
  return s.run();
}

}  // namespace parplan
