#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "parplan/regression.hpp"
#include "parplan/search.hpp"

using namespace parplan;

namespace {

ActionId act(const PlanningTask &t, const std::string &name) {
  const ActionId a = t.find_action(name);
  REQUIRE_MESSAGE(a >= 0, name);
  return a;
}

PlanningTask four_packages() {
  return oracle::from_text(read_file(oracle::bench("logistics/domain.pddl")), R"(
    (define (problem four-packages) (:domain logistics-strips)
      (:objects pack1 pack2 pack3 pack4 airp1 airp2 asu home c1 c2)
      (:init (OBJ pack1) (OBJ pack2) (OBJ pack3) (OBJ pack4)
             (AIRPLANE airp1) (AIRPLANE airp2)
             (LOCATION asu) (LOCATION home) (AIRPORT asu) (AIRPORT home)
             (CITY c1) (CITY c2) (in-city asu c1) (in-city home c2)
             (at pack1 home) (at pack2 home) (at pack3 home) (at pack4 asu)
             (at airp1 home) (at airp2 asu))
      (:goal (and (at pack1 asu) (at pack2 asu) (at pack3 asu) (at pack4 home)))))");
}

SearchResult solve(const PlanningTask &t, SearchConfig config = {}) {
  const auto g = PlanningGraph::build(t, config.graph_mode, config.stop);
  return search(t, g, config);
}

SearchConfig sequential() {
  SearchConfig c;
  c.fattening = false;
  c.pushup = PushupMode::Off;
  return c;
}

std::vector<oracle::DeskTask> suite() {
  auto tasks = oracle::desk_tasks();
  for (const char *p : {"gripper-02", "gripper-04", "gripper-06"})
    tasks.push_back({p, "gripper/domain.pddl", std::string("gripper/") + p + ".pddl"});
  tasks.push_back({"logistics-4-1", "logistics/domain.pddl", "logistics/logistics-4-1.pddl"});
  tasks.push_back({"logistics-g01", "logistics/domain.pddl", "logistics/logistics-g01.pddl"});
  tasks.push_back({"blocks-01", "blocksworld/domain.pddl", "blocksworld/blocks-01.pddl"});
  return tasks;
}

}  // namespace

TEST_CASE("configuration validation") {
  SearchConfig c;
  CHECK_NOTHROW(validate_config(c));
  c.weight = 0.5;
  CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  c = {};
  c.node_budget = 0;
  CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  c = {};
  c.time_budget = -1;
  CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  const PlanningTask t = oracle::load("unit/two-switch-domain.pddl", "unit/two-switch.pddl");
  const auto g = PlanningGraph::build(t, GraphMode::Parallel);
  c.weight = 0;
  CHECK_THROWS_AS(RegressionSearch(t, g, c), std::invalid_argument);
  CHECK(to_string(SearchOutcome::Solved) == "solved");
  CHECK(to_string(SearchOutcome::Exhausted) == "exhausted");
  CHECK(to_string(SearchOutcome::Budget) == "budget");
}

TEST_CASE("goal already true gives the empty plan") {
  const PlanningTask t = oracle::from_text(read_file(oracle::bench("unit/chain-domain.pddl")),
                                           "(define (problem c0) (:domain chain) (:init (p1)) (:goal (p1)))");
  const auto r = solve(t);
  CHECK(r.outcome == SearchOutcome::Solved);
  CHECK(r.plan.makespan() == 0);
  CHECK(r.expansions == 0);
}

TEST_CASE("two-switch solves in one step with both actions") {
  const PlanningTask t = oracle::load("unit/two-switch-domain.pddl", "unit/two-switch.pddl");
  const auto r = solve(t);
  REQUIRE(r.outcome == SearchOutcome::Solved);
  CHECK(r.plan.makespan() == 1);
  CHECK(r.plan.steps[0].size() == 2);

  const auto s = solve(t, sequential());
  REQUIRE(s.outcome == SearchOutcome::Solved);
  CHECK(s.plan.makespan() == 2);
}

TEST_CASE("parexand on the two-switch goal") {
  const PlanningTask t = oracle::load("unit/two-switch-domain.pddl", "unit/two-switch.pddl");
  const auto g = PlanningGraph::build(t, GraphMode::Parallel);
  RegressionSearch s(t, g);
  const Expansion e = s.parexand(t.goal);
  CHECK(e.pivot == act(t, "flipa()"));
  REQUIRE(e.fattened_set.size() == 2);
  CHECK(e.fattened_set[1] == act(t, "flipb()"));
  REQUIRE(e.children.size() == 3);
  CHECK_FALSE(e.children[0].fattened);
  CHECK(e.children[0].h == HeuristicValue(1));
  CHECK(e.children[2].fattened);
  CHECK(e.children[2].state.empty());
  CHECK(e.children[2].h == HeuristicValue(0));
}

TEST_CASE("parexand with a single relevant action adds no fattened child") {
  const PlanningTask t = oracle::load("unit/chain-domain.pddl", "unit/chain.pddl");
  const auto g = PlanningGraph::build(t, GraphMode::Parallel);
  RegressionSearch s(t, g);
  const Expansion e = s.parexand(t.goal);
  REQUIRE(e.children.size() == 1);
  CHECK(e.pivot == act(t, "a2()"));
  CHECK(e.children[0].state == regress(t.goal, t.actions[e.pivot]));
  CHECK(e.fattened_set == std::vector<ActionId>{e.pivot});
}

TEST_CASE("parexand on the four-package goal picks and fattens around the first airp1 delivery") {
  const PlanningTask t = four_packages();
  const auto g = PlanningGraph::build(t, GraphMode::Parallel);
  RegressionSearch s(t, g);
  const Expansion e = s.parexand(t.goal);
  CHECK(e.pivot == act(t, "unload-airplane(pack1,airp1,asu)"));
  const ActionId u4 = act(t, "unload-airplane(pack4,airp2,home)");
  CHECK(std::count(e.fattened_set.begin(), e.fattened_set.end(), u4) == 0);
  // rejected: its own child scores worse than the goal
  for (const auto &c : e.children)
    if (c.incoming == std::vector<ActionId>{u4}) CHECK(c.h > s.heuristic(t.goal));
  // siblings sharing the pivot's plane are preferred
  for (ActionId a : e.fattened_set) CHECK(t.actions[a].args[1] == "airp1");
  CHECK(e.fattened_set.size() >= 3);
  REQUIRE(e.children.back().fattened);
  CHECK(e.children.back().h < s.heuristic(t.goal));
}

TEST_CASE("parexand invariants on states met during search") {
  for (const auto &desk : suite()) {
    CAPTURE(desk.name);
    const PlanningTask t = oracle::load(desk.domain, desk.problem);
    const auto g = PlanningGraph::build(t, GraphMode::Parallel);
    RegressionSearch s(t, g, SearchConfig{});
    const auto r = s.run();
    REQUIRE(r.outcome == SearchOutcome::Solved);
    std::size_t checked = 0;
    for (const auto &node : s.nodes()) {
      if (node.state.empty() || ++checked > 60) continue;
      const Expansion e = s.parexand(node.state);
      const auto rel = relevant_actions(t, node.state);
      const HeuristicValue pivot_h =
          e.children.empty() ? HeuristicValue::infinity() : s.heuristic(regress(node.state, t.actions[e.pivot]));
      for (const auto &c : e.children) {
        CHECK(c.state == regress_set(t, node.state, c.incoming));
        CHECK(c.h == s.heuristic(c.state));
        CHECK(c.h.is_finite());
        CHECK(std::is_sorted(c.incoming.begin(), c.incoming.end()));
        for (ActionId a : c.incoming) CHECK(std::binary_search(rel.begin(), rel.end(), a));
        for (std::size_t i = 0; i < c.incoming.size(); ++i)
          for (std::size_t j = i + 1; j < c.incoming.size(); ++j)
            CHECK(independent(t.actions[c.incoming[i]], t.actions[c.incoming[j]]));
        if (!c.fattened) CHECK(pivot_h <= c.h);
        if (c.fattened) {
          CHECK(c.incoming.size() > 1);
          CHECK(c.h < pivot_h);
        }
      }
    }
  }
}

TEST_CASE("plans are valid, and a sequential configuration yields single-action steps") {
  for (const auto &desk : suite()) {
    CAPTURE(desk.name);
    const PlanningTask t = oracle::load(desk.domain, desk.problem);
    const auto par = solve(t);
    REQUIRE(par.outcome == SearchOutcome::Solved);
    CHECK(par.plan.makespan() <= par.plan.action_count());
    const auto seq = solve(t, sequential());
    REQUIRE(seq.outcome == SearchOutcome::Solved);
    for (const auto &step : seq.plan.steps) CHECK(step.size() == 1);
    CHECK(seq.pushup_motions == 0);
    if (t.num_atoms() <= 64) {
      CHECK(oracle::solves(t, par.plan.steps));
      CHECK(oracle::solves(t, seq.plan.steps));
    }
  }
}

TEST_CASE("fattening never worsens makespan in aggregate") {
  std::vector<oracle::DeskTask> tasks;
  tasks.push_back({"logistics-4-1", "logistics/domain.pddl", "logistics/logistics-4-1.pddl"});
  for (int i = 1; i <= 12; ++i) {
    const std::string name = (i < 10 ? "logistics-g0" : "logistics-g") + std::to_string(i);
    tasks.push_back({name, "logistics/domain.pddl", "logistics/" + name + ".pddl"});
  }
  for (const char *p : {"gripper-02", "gripper-05", "gripper-08"})
    tasks.push_back({p, "gripper/domain.pddl", std::string("gripper/") + p + ".pddl"});
  int with = 0;
  int without = 0;
  for (const auto &desk : tasks) {
    const PlanningTask t = oracle::load(desk.domain, desk.problem);
    SearchConfig off;
    off.fattening = false;
    const auto a = solve(t);
    const auto b = solve(t, off);
    REQUIRE(a.outcome == SearchOutcome::Solved);
    REQUIRE(b.outcome == SearchOutcome::Solved);
    with += a.plan.makespan();
    without += b.plan.makespan();
  }
  CHECK(with <= without);
}

TEST_CASE("desk tasks land within one step of the optimal makespan") {
  for (const auto &desk : oracle::desk_tasks()) {
    CAPTURE(desk.name);
    const PlanningTask t = oracle::load(desk.domain, desk.problem);
    const auto best = oracle::optimal_makespan(t);
    REQUIRE(best.has_value());
    const auto r = solve(t);
    REQUIRE(r.outcome == SearchOutcome::Solved);
    CHECK(r.plan.makespan() <= *best + 1);
    CHECK(r.plan.makespan() >= *best);
  }
}

TEST_CASE("greedy descent strictly lowers h along the trace") {
  for (const auto &desk : suite()) {
    CAPTURE(desk.name);
    const PlanningTask t = oracle::load(desk.domain, desk.problem);
    SearchConfig c;
    c.trace = true;
    const auto r = solve(t, c);
    REQUIRE(r.outcome == SearchOutcome::Solved);
    CHECK(static_cast<long>(r.trace.size()) == r.expansions);
    for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) {
      CHECK(r.trace[i].fattened >= 1);
      if (r.trace[i].greedy) CHECK(r.trace[i + 1].h < r.trace[i].h);
    }
    long motions = 0;
    for (const auto &rec : r.trace) motions += rec.pushup_motions;
    CHECK(motions <= r.pushup_motions);
  }
}

TEST_CASE("runs are deterministic") {
  const PlanningTask t = oracle::load("logistics/domain.pddl", "logistics/logistics-4-1.pddl");
  const auto a = solve(t);
  const auto b = solve(t);
  CHECK(a.plan.steps == b.plan.steps);
  CHECK(a.expansions == b.expansions);
}

TEST_CASE("budgets and dead ends") {
  const PlanningTask t = oracle::load("logistics/domain.pddl", "logistics/logistics-4-1.pddl");
  SearchConfig tight;
  tight.node_budget = 1;
  const auto r = solve(t, tight);
  CHECK(r.outcome == SearchOutcome::Budget);
  CHECK(r.plan.steps.empty());

  // every pair of goals is jointly achievable, all three never are
  const PlanningTask tri = oracle::from_text(R"(
    (define (domain tri) (:predicates (a) (b) (c))
      (:action ab :parameters () :precondition (and) :effect (and (a) (b) (not (c))))
      (:action bc :parameters () :precondition (and) :effect (and (b) (c) (not (a))))
      (:action ac :parameters () :precondition (and) :effect (and (a) (c) (not (b)))))
  )",
                                             "(define (problem t1) (:domain tri) (:init) (:goal (and (a) (b) (c))))");
  const auto dead = solve(tri);
  CHECK(dead.outcome == SearchOutcome::Exhausted);
  CHECK(dead.plan.steps.empty());
}

TEST_CASE("plan_to reads steps leaf first") {
  const PlanningTask t = oracle::load("unit/chain-domain.pddl", "unit/chain.pddl");
  const auto g = PlanningGraph::build(t, GraphMode::Parallel);
  RegressionSearch s(t, g);
  const int root = s.add_root();
  const ActionId a2 = act(t, "a2()");
  const ActionId a1 = act(t, "a1()");
  const int n1 = s.add_node(root, regress(t.goal, t.actions[a2]), {a2});
  const int n2 = s.add_node(n1, regress(s.nodes()[n1].state, t.actions[a1]), {a1});
  const ParallelPlan p = s.plan_to(n2);
  REQUIRE(p.makespan() == 2);
  CHECK(p.steps[0] == std::vector<ActionId>{a1});
  CHECK(p.steps[1] == std::vector<ActionId>{a2});
  CHECK(s.nodes()[n2].g == 2);
  CHECK(s.nodes()[n2].f == doctest::Approx(2.0));
}
