#include "parplan/heuristics.hpp"

#include <algorithm>
#include <limits>

namespace parplan {

HeuristicValue h_sum(const PlanningGraph &graph, const AtomSet &s) {
  HeuristicValue total(0);
  for (AtomId p : s) total = total + graph.lev(p);
  return total;
}

std::optional<RelaxedPlan> extract_relaxed_plan(const PlanningTask &task, const PlanningGraph &graph,
                                                const AtomSet &s) {
  return HeuristicEvaluator(task, graph).relaxed_plan(s);
}

HeuristicValue h_adjsum2m(const PlanningTask &task, const PlanningGraph &graph, const AtomSet &s) {
  return HeuristicEvaluator(task, graph).adjsum2m(s);
}

HeuristicEvaluator::HeuristicEvaluator(const PlanningTask &task, const PlanningGraph &graph)
    : task_(task), graph_(graph) {
  constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;
  prec_level_sum_.resize(task.num_actions());
  prec_level_max_.resize(task.num_actions());
  for (const auto &a : task.actions) {
    int sum = 0;
    int mx = 0;
    for (AtomId p : a.prec) {
      const LevelValue l = graph.lev(p);
      const int v = l.is_finite() ? l.value() : kUnreachable;
      sum = std::min(sum + v, kUnreachable);
      mx = std::max(mx, v);
    }
    prec_level_sum_[a.id] = sum;
    prec_level_max_[a.id] = mx;
  }
  goal_stamp_.assign(task.num_atoms(), 0);
  achieved_stamp_.assign(task.num_atoms(), 0);
}

bool HeuristicEvaluator::extract(const AtomSet &s, RelaxedPlan *out, int *length) {
  const int horizon = graph_.horizon();
  int top = 0;
  int beyond = 0;
  for (AtomId p : s) {
    const LevelValue l = graph_.lev(p);
    if (l.is_infinite()) return false;
    if (l.value() > horizon)
      ++beyond;
    else
      top = std::max(top, l.value());
  }
  if (goals_at_.size() < static_cast<std::size_t>(top) + 1) goals_at_.resize(top + 1);
  for (int k = 0; k <= top; ++k) goals_at_[k].clear();

  const unsigned goal_mark = ++stamp_;
  for (AtomId p : s) {
    const int l = graph_.lev(p).value();
    if (l > horizon || l == 0) continue;
    goal_stamp_[p] = goal_mark;
    goals_at_[l].push_back(p);
  }

  int count = beyond * (horizon + 1);
  if (out) {
    out->steps.assign(top, {});
    out->beyond_horizon = beyond;
  }
  for (int k = top; k >= 1; --k) {
    auto &goals = goals_at_[k];
    std::sort(goals.begin(), goals.end());
    const unsigned achieved_mark = ++stamp_;
    // goals grow only at lower levels, so iterating by index is stable
    for (std::size_t gi = 0; gi < goals.size(); ++gi) {
      const AtomId g = goals[gi];
      if (achieved_stamp_[g] == achieved_mark) continue;
      ActionId best = -1;
      for (ActionId a : task_.achievers[g]) {
        if (prec_level_max_[a] > k - 1) continue;
        if (best < 0 || prec_level_sum_[a] < prec_level_sum_[best]) best = a;
      }
      // lev(g) == k guarantees a supporter with preconditions at k-1
      const GroundAction &act = task_.actions[best];
      ++count;
      if (out) out->steps[k - 1].push_back(best);
      for (AtomId q : act.add) achieved_stamp_[q] = achieved_mark;
      for (AtomId q : act.prec) {
        const int lq = graph_.lev(q).value();
        if (lq == 0 || goal_stamp_[q] == goal_mark) continue;
        goal_stamp_[q] = goal_mark;
        goals_at_[lq].push_back(q);
      }
    }
  }
  if (out) {
    for (auto &step : out->steps) std::sort(step.begin(), step.end());
    out->length = count;
  }
  if (length) *length = count;
  return true;
}

std::optional<RelaxedPlan> HeuristicEvaluator::relaxed_plan(const AtomSet &s) {
  RelaxedPlan rp;
  if (!extract(s, &rp, nullptr)) return std::nullopt;
  return rp;
}

HeuristicValue HeuristicEvaluator::relaxed_plan_length(const AtomSet &s) {
  int len = 0;
  if (!extract(s, nullptr, &len)) return HeuristicValue::infinity();
  return HeuristicValue(len);
}

HeuristicValue HeuristicEvaluator::max_delta(const AtomSet &s) const {
  return graph_.max_delta(s);
}

HeuristicValue HeuristicEvaluator::adjsum2m(const AtomSet &s) {
  ++evaluations_;
  const HeuristicValue rp = relaxed_plan_length(s);
  if (rp.is_infinite()) return rp;
  return rp + max_delta(s);
}

}  // namespace parplan
