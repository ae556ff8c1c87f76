#include <doctest.h>

#include "oracles.hpp"
#include "parplan/deorder.hpp"
#include "parplan/regression.hpp"
#include "parplan/search.hpp"

using namespace parplan;

namespace {

ActionId act(const PlanningTask &t, const std::string &name) {
  const ActionId a = t.find_action(name);
  REQUIRE_MESSAGE(a >= 0, name);
  return a;
}

bool has_edge(const OrderedPlan &p, int i, int j) {
  return std::find(p.edges.begin(), p.edges.end(), std::make_pair(i, j)) != p.edges.end();
}

std::vector<oracle::DeskTask> suite() {
  auto tasks = oracle::desk_tasks();
  tasks.push_back({"gripper-05", "gripper/domain.pddl", "gripper/gripper-05.pddl"});
  tasks.push_back({"logistics-4-1", "logistics/domain.pddl", "logistics/logistics-4-1.pddl"});
  tasks.push_back({"logistics-g02", "logistics/domain.pddl", "logistics/logistics-g02.pddl"});
  tasks.push_back({"blocks-02", "blocksworld/domain.pddl", "blocksworld/blocks-02.pddl"});
  return tasks;
}

}  // namespace

TEST_CASE("independent switches need no ordering") {
  const PlanningTask t = oracle::load("unit/two-switch-domain.pddl", "unit/two-switch.pddl");
  const OrderedPlan o = deorder(t, {act(t, "flipa()"), act(t, "flipb()")});
  CHECK(o.edges.empty());
  const ParallelPlan p = schedule(t, o);
  CHECK(p.makespan() == 1);
  CHECK(p.action_count() == 2);
}

TEST_CASE("support dependencies survive") {
  const PlanningTask t = oracle::load("unit/chain-domain.pddl", "unit/chain.pddl");
  const OrderedPlan o = deorder(t, {act(t, "a1()"), act(t, "a2()")});
  CHECK(has_edge(o, 0, 1));
  CHECK(schedule(t, o).makespan() == 2);
}

TEST_CASE("schedule on trivial orders") {
  const PlanningTask t = oracle::load("gripper/domain.pddl", "gripper/gripper-05.pddl");
  const std::vector<ActionId> independent_set{act(t, "pick(ball1,rooma,left)"), act(t, "pick(ball2,rooma,right)")};
  REQUIRE(independent_of_all(t, independent_set[0], std::vector<ActionId>{independent_set[1]}));
  CHECK(schedule(t, OrderedPlan{independent_set, {}}).makespan() == 1);

  const std::vector<ActionId> k{0, 1, 2, 3};
  OrderedPlan total{k, {}};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) total.edges.push_back({i, j});
  CHECK(schedule(t, total).makespan() == 4);

  // unordered but interfering: an edge is reinstated
  const PlanningTask sw = oracle::load("unit/two-switch-domain.pddl", "unit/two-switch.pddl");
  const ActionId fa = act(sw, "flipa()");
  CHECK(schedule(sw, OrderedPlan{{fa, fa}, {}}).makespan() == 2);

  CHECK_THROWS_AS(schedule(sw, OrderedPlan{{fa, act(sw, "flipb()")}, {{0, 1}, {1, 0}}}), std::logic_error);
}

TEST_CASE("invalid input plans are rejected") {
  const PlanningTask t = oracle::load("unit/chain-domain.pddl", "unit/chain.pddl");
  CHECK_THROWS_AS(deorder(t, {act(t, "a2()"), act(t, "a1()")}), InvalidPlanError);
  CHECK_THROWS_AS(deorder(t, {act(t, "a1()")}), InvalidPlanError);
  try {
    deorder(t, {act(t, "a1()")});
  } catch (const InvalidPlanError &e) {
    CHECK_FALSE(e.report().valid);
  }
}

TEST_CASE("reference logistics plan keeps its makespan") {
  const PlanningTask t = oracle::load("logistics/domain.pddl", "logistics/logistics-4-1.pddl");
  const ParallelPlan ref = parse_plan(t, read_file(oracle::bench("logistics/logistics-4-1.reference.plan")));
  const ParallelPlan out = deorder_plan(t, ref);
  CHECK(out.makespan() == 9);
  CHECK(out.action_count() == 19);
  CHECK(validate(t, out).valid);
}

TEST_CASE("de-ordering sequential plans: valid, same actions, never longer") {
  for (const auto &desk : suite()) {
    CAPTURE(desk.name);
    const PlanningTask t = oracle::load(desk.domain, desk.problem);
    SearchConfig seq;
    seq.fattening = false;
    seq.pushup = PushupMode::Off;
    const auto g = PlanningGraph::build(t, seq.graph_mode);
    const auto r = search(t, g, seq);
    REQUIRE(r.outcome == SearchOutcome::Solved);
    const auto order = r.plan.linearize(t);
    const OrderedPlan o = deorder(t, order);
    for (const auto &[i, j] : o.edges) CHECK(i < j);
    const ParallelPlan p = schedule(t, o);
    CHECK(validate(t, p).valid);
    CHECK(oracle::multiset_of(p.steps) == oracle::multiset_of(r.plan.steps));
    CHECK(p.makespan() <= static_cast<int>(order.size()));
    if (t.num_atoms() <= 64) CHECK(oracle::solves(t, p.steps));
  }
}

TEST_CASE("de-ordering parallel search output never increases makespan") {
  for (const auto &desk : suite()) {
    CAPTURE(desk.name);
    const PlanningTask t = oracle::load(desk.domain, desk.problem);
    const auto g = PlanningGraph::build(t, GraphMode::Parallel);
    const auto r = search(t, g);
    REQUIRE(r.outcome == SearchOutcome::Solved);
    const ParallelPlan p = deorder_plan(t, r.plan);
    CHECK(validate(t, p).valid);
    CHECK(p.makespan() <= r.plan.makespan());
    CHECK(p.action_count() == r.plan.action_count());
  }
}
