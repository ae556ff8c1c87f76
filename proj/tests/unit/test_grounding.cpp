#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "parplan/task.hpp"

using namespace parplan;

TEST_CASE("two-switch grounds to two actions") {
  const PlanningTask t = oracle::load("unit/two-switch-domain.pddl", "unit/two-switch.pddl");
  CHECK(t.num_actions() == 2);
  CHECK(t.num_atoms() == 2);
  CHECK(t.initial_state.empty());
  CHECK(t.goal.size() == 2);
  CHECK(t.find_action("flipa()") >= 0);
  CHECK(t.find_action("flipb()") >= 0);
}

TEST_CASE("gripper with 4 balls has 34 ground actions") {
  GroundingReport report;
  const auto d = parse_domain(read_file(oracle::bench("gripper/domain.pddl")));
  const auto p = parse_problem(read_file(oracle::bench("gripper/gripper-04.pddl")), d);
  const PlanningTask t = ground(d, p, &report);
  // independent count: 4 balls x 2 rooms x 2 grippers for pick and for drop,
  // plus the two room-changing moves
  std::map<std::string, int> by_schema;
  for (const auto &a : t.actions) ++by_schema[a.schema];
  CHECK(by_schema["pick"] == 16);
  CHECK(by_schema["drop"] == 16);
  CHECK(by_schema["move"] == 2);
  CHECK(t.num_actions() == 34);
  CHECK(report.pruned_noop == 2);  // move(rooma,rooma), move(roomb,roomb)
  CHECK(report.warnings.size() == 2);
}

TEST_CASE("a parameter type without objects yields no instances") {
  const auto d = parse_domain(R"(
    (define (domain t) (:requirements :strips :typing) (:types a b)
      (:predicates (p ?x - a) (q ?y - b))
      (:action useb :parameters (?y - b) :precondition (and) :effect (q ?y))
      (:action usea :parameters (?x - a) :precondition (and) :effect (p ?x))))");
  const auto p = parse_problem("(define (problem t1) (:domain t) (:objects x1 x2 - a) (:init) (:goal (p x1)))", d);
  const PlanningTask t = ground(d, p);
  for (const auto &a : t.actions) CHECK(a.schema == "usea");
  CHECK(t.num_actions() == 2);
}

TEST_CASE("grounding keeps only delete-relaxed reachable actions") {
  const PlanningTask t = oracle::load("logistics/domain.pddl", "logistics/logistics-4-1.pddl");
  // trucks never leave their city and the airplane only flies between airports
  CHECK(t.find_action("drive-truck(tru1,pos1,apt2,cit2)") < 0);
  CHECK(t.find_action("drive-truck(tru1,pos1,apt1,cit1)") >= 0);
  CHECK(t.find_action("fly-airplane(apn1,pos1,apt1)") < 0);
  // every action's preconditions are in the atom table and the reachable set
  std::set<AtomId> reachable(t.initial_state.begin(), t.initial_state.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto &a : t.actions)
      if (std::all_of(a.prec.begin(), a.prec.end(), [&](AtomId p) { return reachable.count(p); }))
        for (AtomId p : a.add) grew |= reachable.insert(p).second;
  }
  for (const auto &a : t.actions)
    for (AtomId p : a.prec) CHECK(reachable.count(p));
}

TEST_CASE("ground action ids are dense and indexed") {
  const PlanningTask t = oracle::load("gripper/domain.pddl", "gripper/gripper-03.pddl");
  for (std::size_t i = 0; i < t.num_actions(); ++i) {
    CHECK(t.actions[i].id == static_cast<ActionId>(i));
    CHECK(t.find_action(t.actions[i].name) == static_cast<ActionId>(i));
    CHECK(std::is_sorted(t.actions[i].prec.begin(), t.actions[i].prec.end()));
  }
  for (std::size_t p = 0; p < t.num_atoms(); ++p) {
    CHECK(t.find_atom(t.atoms[p]) == static_cast<AtomId>(p));
    for (ActionId a : t.achievers[p]) CHECK(std::binary_search(t.actions[a].add.begin(), t.actions[a].add.end(), p));
  }
  CHECK(t.find_action("pick(ball9,rooma,left)") == -1);
}

TEST_CASE("set helpers") {
  CHECK(is_subset({1, 3}, {1, 2, 3}));
  CHECK_FALSE(is_subset({1, 4}, {1, 2, 3}));
  CHECK(intersects({1, 5}, {5}));
  CHECK_FALSE(intersects({}, {1}));
  CHECK(set_union({1, 3}, {2, 3}) == AtomSet{1, 2, 3});
  CHECK(set_difference({1, 2, 3}, {2}) == AtomSet{1, 3});
  CHECK(format_call("pick", {"b1", "rooma"}) == "pick(b1,rooma)");
}
