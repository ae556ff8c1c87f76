#!/usr/bin/env python3
"""Writes the bundled PDDL benchmark suites under benchmarks/.

Deterministic: rerunning reproduces the committed files byte for byte.
"""
import argparse
import random
from pathlib import Path

GRIPPER_DOMAIN = """\
(define (domain gripper-strips)
  (:predicates (room ?r) (ball ?b) (gripper ?g)
               (at-robby ?r) (at ?b ?r) (free ?g) (carry ?o ?g))
  (:action move
    :parameters (?from ?to)
    :precondition (and (room ?from) (room ?to) (at-robby ?from))
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pick
    :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)
                       (at ?obj ?room) (at-robby ?room) (free ?gripper))
    :effect (and (carry ?obj ?gripper) (not (at ?obj ?room)) (not (free ?gripper))))
  (:action drop
    :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)
                       (carry ?obj ?gripper) (at-robby ?room))
    :effect (and (at ?obj ?room) (free ?gripper) (not (carry ?obj ?gripper)))))
"""

MICRO_GRIPPER_DOMAIN = """\
(define (domain micro-gripper)
  (:requirements :strips :typing)
  (:types room ball gripper)
  (:predicates (at-robby ?r - room) (at ?b - ball ?r - room)
               (free ?g - gripper) (carry ?o - ball ?g - gripper))
  (:action move
    :parameters (?from ?to - room)
    :precondition (at-robby ?from)
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pick
    :parameters (?obj - ball ?room - room ?gripper - gripper)
    :precondition (and (at ?obj ?room) (at-robby ?room) (free ?gripper))
    :effect (and (carry ?obj ?gripper) (not (at ?obj ?room)) (not (free ?gripper))))
  (:action drop
    :parameters (?obj - ball ?room - room ?gripper - gripper)
    :precondition (and (carry ?obj ?gripper) (at-robby ?room))
    :effect (and (at ?obj ?room) (free ?gripper) (not (carry ?obj ?gripper)))))
"""

LOGISTICS_DOMAIN = """\
(define (domain logistics-strips)
  (:requirements :strips)
  (:predicates (OBJ ?obj) (TRUCK ?truck) (LOCATION ?loc) (AIRPLANE ?airplane)
               (CITY ?city) (AIRPORT ?airport)
               (at ?obj ?loc) (in ?obj1 ?obj2) (in-city ?obj ?city))
  (:action LOAD-TRUCK
    :parameters (?obj ?truck ?loc)
    :precondition (and (OBJ ?obj) (TRUCK ?truck) (LOCATION ?loc)
                       (at ?truck ?loc) (at ?obj ?loc))
    :effect (and (not (at ?obj ?loc)) (in ?obj ?truck)))
  (:action LOAD-AIRPLANE
    :parameters (?obj ?airplane ?loc)
    :precondition (and (OBJ ?obj) (AIRPLANE ?airplane) (LOCATION ?loc)
                       (at ?obj ?loc) (at ?airplane ?loc))
    :effect (and (not (at ?obj ?loc)) (in ?obj ?airplane)))
  (:action UNLOAD-TRUCK
    :parameters (?obj ?truck ?loc)
    :precondition (and (OBJ ?obj) (TRUCK ?truck) (LOCATION ?loc)
                       (at ?truck ?loc) (in ?obj ?truck))
    :effect (and (not (in ?obj ?truck)) (at ?obj ?loc)))
  (:action UNLOAD-AIRPLANE
    :parameters (?obj ?airplane ?loc)
    :precondition (and (OBJ ?obj) (AIRPLANE ?airplane) (LOCATION ?loc)
                       (in ?obj ?airplane) (at ?airplane ?loc))
    :effect (and (not (in ?obj ?airplane)) (at ?obj ?loc)))
  (:action DRIVE-TRUCK
    :parameters (?truck ?loc-from ?loc-to ?city)
    :precondition (and (TRUCK ?truck) (LOCATION ?loc-from) (LOCATION ?loc-to) (CITY ?city)
                       (at ?truck ?loc-from) (in-city ?loc-from ?city) (in-city ?loc-to ?city))
    :effect (and (not (at ?truck ?loc-from)) (at ?truck ?loc-to)))
  (:action FLY-AIRPLANE
    :parameters (?airplane ?loc-from ?loc-to)
    :precondition (and (AIRPLANE ?airplane) (AIRPORT ?loc-from) (AIRPORT ?loc-to)
                       (at ?airplane ?loc-from))
    :effect (and (not (at ?airplane ?loc-from)) (at ?airplane ?loc-to))))
"""

MICRO_LOGISTICS_DOMAIN = """\
(define (domain micro-logistics)
  (:requirements :strips :typing)
  (:types package vehicle place city - object
          truck airplane - vehicle
          airport - place)
  (:predicates (at ?x - object ?p - place) (in ?x - package ?v - vehicle)
               (in-city ?p - place ?c - city))
  (:action load
    :parameters (?o - package ?v - vehicle ?p - place)
    :precondition (and (at ?v ?p) (at ?o ?p))
    :effect (and (not (at ?o ?p)) (in ?o ?v)))
  (:action unload
    :parameters (?o - package ?v - vehicle ?p - place)
    :precondition (and (at ?v ?p) (in ?o ?v))
    :effect (and (not (in ?o ?v)) (at ?o ?p)))
  (:action drive
    :parameters (?t - truck ?from ?to - place ?c - city)
    :precondition (and (at ?t ?from) (in-city ?from ?c) (in-city ?to ?c))
    :effect (and (not (at ?t ?from)) (at ?t ?to)))
  (:action fly
    :parameters (?a - airplane ?from ?to - airport)
    :precondition (at ?a ?from)
    :effect (and (not (at ?a ?from)) (at ?a ?to))))
"""

BLOCKS_DOMAIN = """\
(define (domain blocks)
  (:requirements :strips)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (handempty) (holding ?x))
  (:action pick-up
    :parameters (?x)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (not (ontable ?x)) (not (clear ?x)) (not (handempty)) (holding ?x)))
  (:action put-down
    :parameters (?x)
    :precondition (holding ?x)
    :effect (and (not (holding ?x)) (clear ?x) (handempty) (ontable ?x)))
  (:action stack
    :parameters (?x ?y)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (not (holding ?x)) (not (clear ?y)) (clear ?x) (handempty) (on ?x ?y)))
  (:action unstack
    :parameters (?x ?y)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (clear ?x)) (not (handempty)) (not (on ?x ?y)))))
"""

TWO_SWITCH_DOMAIN = """\
(define (domain two-switch)
  (:requirements :strips)
  (:predicates (ona) (onb))
  (:action flipa :parameters () :precondition (and) :effect (ona))
  (:action flipb :parameters () :precondition (and) :effect (onb)))
"""

TWO_SWITCH_PROBLEM = """\
(define (problem two-switch)
  (:domain two-switch)
  (:init)
  (:goal (and (ona) (onb))))
"""

CHAIN_DOMAIN = """\
(define (domain chain)
  (:requirements :strips)
  (:predicates (p1) (p2))
  (:action a1 :parameters () :precondition (and) :effect (p1))
  (:action a2 :parameters () :precondition (p1) :effect (p2)))
"""

CHAIN_PROBLEM = """\
(define (problem chain)
  (:domain chain)
  (:init)
  (:goal (p2)))
"""

# Step contents of the reference logistics-4-1 solution, one list per time step.
FIG17_PLAN = [
    ["load-truck(obj13,tru1,pos1)", "load-truck(obj12,tru1,pos1)", "load-truck(obj11,tru1,pos1)"],
    ["drive-truck(tru1,pos1,apt1,cit1)"],
    ["unload-truck(obj12,tru1,apt1)", "fly-airplane(apn1,apt2,apt1)", "unload-truck(obj11,tru1,apt1)"],
    ["load-airplane(obj12,apn1,apt1)", "load-airplane(obj11,apn1,apt1)"],
    ["load-truck(obj21,tru2,pos2)", "fly-airplane(apn1,apt1,apt2)"],
    ["drive-truck(tru2,pos2,apt2,cit2)", "unload-airplane(obj11,apn1,apt2)"],
    ["load-truck(obj11,tru2,apt2)", "unload-truck(obj21,tru2,apt2)"],
    ["drive-truck(tru2,apt2,pos2,cit2)"],
    ["unload-airplane(obj12,apn1,apt2)", "unload-truck(obj13,tru1,apt1)", "unload-truck(obj11,tru2,pos2)"],
]


def atoms(lines, indent="    "):
    return "\n".join(indent + line for line in lines)


def gripper_problem(n):
    balls = [f"ball{i}" for i in range(1, n + 1)]
    init = ["(room rooma)", "(room roomb)", "(gripper left)", "(gripper right)",
            "(at-robby rooma)", "(free left)", "(free right)"]
    init += [f"(ball {b})" for b in balls] + [f"(at {b} rooma)" for b in balls]
    goal = [f"(at {b} roomb)" for b in balls]
    return (f"(define (problem gripper-{n:02d})\n  (:domain gripper-strips)\n"
            f"  (:objects rooma roomb left right {' '.join(balls)})\n"
            f"  (:init\n{atoms(init)})\n  (:goal (and\n{atoms(goal)})))\n")


def micro_gripper_problem(name, balls, grippers):
    init = ["(at-robby rooma)"] + [f"(free {g})" for g in grippers] + [f"(at {b} rooma)" for b in balls]
    goal = [f"(at {b} roomb)" for b in balls]
    return (f"(define (problem {name})\n  (:domain micro-gripper)\n"
            f"  (:objects rooma roomb - room {' '.join(balls)} - ball {' '.join(grippers)} - gripper)\n"
            f"  (:init\n{atoms(init)})\n  (:goal (and\n{atoms(goal)})))\n")


def logistics_problem(name, cities, planes, packages, plane_at, package_at, goal_at):
    """cities: list of (city, [locations], airport or None, truck)."""
    objs, init = [], []
    for city, locs, airport, truck in cities:
        objs += [city, *locs, truck]
        init.append(f"(CITY {city})")
        init.append(f"(TRUCK {truck})")
        for loc in locs:
            init.append(f"(LOCATION {loc})")
            init.append(f"(in-city {loc} {city})")
        if airport:
            init.append(f"(AIRPORT {airport})")
        init.append(f"(at {truck} {locs[0]})")
    for plane in planes:
        objs.append(plane)
        init.append(f"(AIRPLANE {plane})")
        init.append(f"(at {plane} {plane_at[plane]})")
    for pkg in packages:
        objs.append(pkg)
        init.append(f"(OBJ {pkg})")
        init.append(f"(at {pkg} {package_at[pkg]})")
    goal = [f"(at {pkg} {loc})" for pkg, loc in goal_at]
    return (f"(define (problem {name})\n  (:domain logistics-strips)\n"
            f"  (:objects {' '.join(objs)})\n"
            f"  (:init\n{atoms(init)})\n  (:goal (and\n{atoms(goal)})))\n")


def logistics_4_1():
    cities = [("cit1", ["pos1", "apt1"], "apt1", "tru1"), ("cit2", ["pos2", "apt2"], "apt2", "tru2")]
    packages = ["obj11", "obj12", "obj13", "obj21", "obj22", "obj23"]
    package_at = {p: ("pos1" if p.startswith("obj1") else "pos2") for p in packages}
    goal = [("obj13", "apt1"), ("obj12", "apt2"), ("obj11", "pos2"), ("obj21", "apt2")]
    return logistics_problem("logistics-4-1", cities, ["apn1"], packages, {"apn1": "apt2"}, package_at, goal)


# (cities, airplanes, packages, goals)
FAMILY_SHAPES = [(2, 1, 3, 3), (2, 1, 4, 3), (2, 1, 4, 4), (2, 1, 5, 4), (3, 1, 4, 3), (3, 1, 5, 4),
                 (3, 1, 6, 5), (3, 2, 6, 5), (3, 1, 7, 5), (4, 1, 6, 5), (4, 2, 7, 6), (4, 2, 8, 6)]
# scale-up tail, drawn from its own generator so the instances above stay fixed
TAIL_SHAPES = [(6, 3, 20, 15), (8, 4, 30, 25), (10, 4, 40, 35), (12, 4, 50, 45)]


def logistics_family(rng, shapes=FAMILY_SHAPES, first=1):
    out = {}
    for idx, (nc, na, np_, ng) in enumerate(shapes, start=first):
        cities = [(f"cit{c}", [f"pos{c}", f"apt{c}"], f"apt{c}", f"tru{c}") for c in range(1, nc + 1)]
        locations = [loc for _, locs, _, _ in cities for loc in locs]
        airports = [a for _, _, a, _ in cities]
        planes = [f"apn{i}" for i in range(1, na + 1)]
        plane_at = {p: rng.choice(airports) for p in planes}
        packages = [f"obj{i:02d}" for i in range(1, np_ + 1)]
        package_at = {p: rng.choice(locations) for p in packages}
        goal = []
        for p in rng.sample(packages, ng):
            goal.append((p, rng.choice([loc for loc in locations if loc != package_at[p]])))
        goal.sort()
        name = f"logistics-g{idx:02d}"
        out[name] = logistics_problem(name, cities, planes, packages, plane_at, package_at, goal)
    return out


def micro_logistics():
    problems = {}
    problems["micro-logistics-1"] = """\
(define (problem micro-logistics-1)
  (:domain micro-logistics)
  (:objects c1 - city po1 - place ap1 - airport t1 - truck p1 - package)
  (:init (in-city po1 c1) (in-city ap1 c1) (at t1 po1) (at p1 po1))
  (:goal (at p1 ap1)))
"""
    problems["micro-logistics-2"] = """\
(define (problem micro-logistics-2)
  (:domain micro-logistics)
  (:objects c1 c2 - city po1 - place ap1 ap2 - airport t1 - truck a1 - airplane p1 - package)
  (:init (in-city po1 c1) (in-city ap1 c1) (in-city ap2 c2)
         (at t1 po1) (at a1 ap1) (at p1 po1))
  (:goal (at p1 ap2)))
"""
    problems["micro-logistics-3"] = """\
(define (problem micro-logistics-3)
  (:domain micro-logistics)
  (:objects c1 - city po1 - place ap1 - airport t1 - truck p1 p2 - package)
  (:init (in-city po1 c1) (in-city ap1 c1) (at t1 po1) (at p1 po1) (at p2 ap1))
  (:goal (and (at p1 ap1) (at p2 po1))))
"""
    return problems


def blocks_problem(name, n, rng):
    blocks = [f"b{i}" for i in range(1, n + 1)]

    def random_towers():
        order = blocks[:]
        rng.shuffle(order)
        towers, cur = [], []
        for b in order:
            cur.append(b)
            if rng.random() < 0.35:
                towers.append(cur)
                cur = []
        if cur:
            towers.append(cur)
        return towers

    def describe(towers, with_hand):
        facts = []
        for tower in towers:
            facts.append(f"(ontable {tower[0]})")
            for lower, upper in zip(tower, tower[1:]):
                facts.append(f"(on {upper} {lower})")
            if with_hand:
                facts.append(f"(clear {tower[-1]})")
        if with_hand:
            facts.append("(handempty)")
        return facts

    init = describe(random_towers(), True)
    goal = [f for f in describe(random_towers(), False) if not f.startswith("(ontable")]
    while not goal or set(goal) <= set(init):
        goal = [f for f in describe(random_towers(), False) if not f.startswith("(ontable")]
    return (f"(define (problem {name})\n  (:domain blocks)\n  (:objects {' '.join(blocks)})\n"
            f"  (:init\n{atoms(init)})\n  (:goal (and\n{atoms(goal)})))\n")


def plan_text(steps):
    n = sum(len(s) for s in steps)
    lines = [f";; makespan={len(steps)} actions={n}"]
    for i, step in enumerate(steps, start=1):
        lines.append(f"{i}: " + " | ".join(sorted(step)))
    return "\n".join(lines) + "\n"


def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "benchmarks")
    ap.add_argument("--seed", type=int, default=17)
    args = ap.parse_args()
    out = args.out
    rng = random.Random(args.seed)

    write(out / "gripper/domain.pddl", GRIPPER_DOMAIN)
    for n in range(1, 31):
        write(out / f"gripper/gripper-{n:02d}.pddl", gripper_problem(n))

    write(out / "logistics/domain.pddl", LOGISTICS_DOMAIN)
    write(out / "logistics/logistics-4-1.pddl", logistics_4_1())
    write(out / "logistics/logistics-4-1.reference.plan", plan_text(FIG17_PLAN))
    family = logistics_family(rng)
    family.update(logistics_family(random.Random(args.seed + 1000), TAIL_SHAPES, len(FAMILY_SHAPES) + 1))
    for name, text in family.items():
        write(out / f"logistics/{name}.pddl", text)

    write(out / "blocksworld/domain.pddl", BLOCKS_DOMAIN)
    blocks = []
    for i, n in enumerate([4, 5, 5, 6, 6, 7, 7, 8], start=1):
        name = f"blocks-{i:02d}"
        write(out / f"blocksworld/{name}.pddl", blocks_problem(name, n, rng))
        blocks.append(name)

    write(out / "unit/two-switch-domain.pddl", TWO_SWITCH_DOMAIN)
    write(out / "unit/two-switch.pddl", TWO_SWITCH_PROBLEM)
    write(out / "unit/chain-domain.pddl", CHAIN_DOMAIN)
    write(out / "unit/chain.pddl", CHAIN_PROBLEM)

    write(out / "micro/gripper-domain.pddl", MICRO_GRIPPER_DOMAIN)
    micro_g = {"micro-gripper-1": (["ball1"], ["left", "right"]),
               "micro-gripper-2": (["ball1", "ball2"], ["left"]),
               "micro-gripper-3": (["ball1", "ball2"], ["left", "right"])}
    for name, (balls, grippers) in micro_g.items():
        write(out / f"micro/{name}.pddl", micro_gripper_problem(name, balls, grippers))
    write(out / "micro/logistics-domain.pddl", MICRO_LOGISTICS_DOMAIN)
    for name, text in micro_logistics().items():
        write(out / f"micro/{name}.pddl", text)

    manifests = out / "manifests"
    gripper_rows = [f"../gripper/domain.pddl ../gripper/gripper-{n:02d}.pddl" for n in range(2, 31)]
    logistics_names = ["logistics-4-1", *family]
    logistics_rows = [f"../logistics/domain.pddl ../logistics/{n}.pddl" for n in logistics_names]
    unit_rows = ["../unit/two-switch-domain.pddl ../unit/two-switch.pddl",
                 "../unit/chain-domain.pddl ../unit/chain.pddl"]
    blocks_rows = [f"../blocksworld/domain.pddl ../blocksworld/{n}.pddl" for n in blocks]
    micro_rows = ([f"../micro/gripper-domain.pddl ../micro/{n}.pddl" for n in micro_g]
                  + [f"../micro/logistics-domain.pddl ../micro/{n}.pddl" for n in micro_logistics()])

    def manifest(name, header, rows_by_flags):
        lines = [f"# {header}"]
        for flags, rows in rows_by_flags:
            lines += [f"{r} {flags}".rstrip() for r in rows]
        write(manifests / f"{name}.txt", "\n".join(lines) + "\n")

    manifest("gripper", "gripper 2..30 balls, default configuration", [("", gripper_rows)])
    manifest("logistics", "logistics family, default configuration", [("", logistics_rows)])
    manifest("blocksworld", "blocks world, default vs. sequential search",
             [("", blocks_rows), ("--fatten off --pushup off", blocks_rows)])
    manifest("unit", "unit and desk-scale tasks", [("", unit_rows + micro_rows)])
    manifest("pushup-ablation", "logistics family: pushup off / on / aggressive",
             [("--pushup off", logistics_rows), ("--pushup on", logistics_rows),
              ("--pushup aggressive --time-budget 60", logistics_rows)])
    manifest("graph-ablation", "logistics family: parallel vs. serial planning graph",
             [("--graph parallel", logistics_rows), ("--graph serial", logistics_rows)])
    manifest("sequential-vs-parallel", "logistics family: sequential search vs. default",
             [("--fatten off --pushup off", logistics_rows), ("", logistics_rows)])


if __name__ == "__main__":
    main()
