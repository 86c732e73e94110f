"""Isolated gadget subgraphs and exhaustive verification of their
local-schedule families.

Each builder returns ``(instance, pinned, names)``: a tiny decision
instance consisting of the gadget's core nodes plus one dummy endpoint
per boundary edge, the slot pinning its global wiring would impose, and
a name-to-edge map for assertions.  The verification functions run the
oracle's exhaustive enumerator over the gadget's natural period (every
core node is either saturated, with local density exactly 1, or pinned,
so any longer-period schedule collapses to that period) and compare the
resulting family with the one the gadget is designed to force.

``verify_gadget_properties`` runs the whole battery: the clock, variable,
both flippers, the 3- and 6-duplicator cores, the OR gadget over all
eight input colorings, and the tension gadget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import DpsInstance, Schedule, dps_instance
from .oracle import SlotColor, enumerate_local_schedules, slot_color

RED = SlotColor.RED
BLUE = SlotColor.BLUE
GREEN = SlotColor.GREEN
PURPLE = SlotColor.PURPLE


@dataclass(frozen=True)
class GadgetCheck:
    name: str
    ok: bool
    detail: str


def _edge_days(sched: Schedule, e: int) -> frozenset[int]:
    return frozenset(t for t in range(sched.period) if e in sched.days[t])


def _all_in_color(sched: Schedule, e: int, color: SlotColor) -> bool:
    days = _edge_days(sched, e)
    return bool(days) and all(slot_color(t) == color for t in days)


# ---------------------------------------------------------------------------
# builders: center-star gadgets


def gadget_true_clock() -> tuple[DpsInstance, dict[int, SlotColor], dict[str, int]]:
    """Clock node: edges [3 red, 3 blue, 6 green, 6 purple], all pinned."""
    inst = dps_instance(5, [(0, 1, 3), (0, 2, 3), (0, 3, 6), (0, 4, 6)])
    pins = {0: RED, 1: BLUE, 2: GREEN, 3: PURPLE}
    return inst, pins, {"r3": 0, "b3": 1, "g6": 2, "p6": 3}


def gadget_variable() -> tuple[DpsInstance, dict[int, SlotColor], dict[str, int]]:
    """Variable node: two free 3-edges, green and purple 6-edges pinned."""
    inst = dps_instance(5, [(0, 1, 3), (0, 2, 3), (0, 3, 6), (0, 4, 6)])
    pins = {2: GREEN, 3: PURPLE}
    return inst, pins, {"a3": 0, "b3": 1, "g6": 2, "p6": 3}


def gadget_flipper6(input_color: SlotColor = GREEN):
    """6-flipper: [3, 3, 6, 6] with only the input 6-edge pinned."""
    inst = dps_instance(5, [(0, 1, 3), (0, 2, 3), (0, 3, 6), (0, 4, 6)])
    pins = {2: input_color}
    return inst, pins, {"a3": 0, "b3": 1, "six_in": 2, "six_out": 3}


def gadget_flipper3(in3: SlotColor = BLUE, in6: SlotColor = GREEN):
    """3-flipper: pinned 3- and 6-inputs; outputs derived."""
    inst = dps_instance(5, [(0, 1, 3), (0, 2, 3), (0, 3, 6), (0, 4, 6)])
    pins = {0: in3, 2: in6}
    return inst, pins, {"three_in": 0, "three_out": 1, "six_in": 2, "six_out": 3}


def gadget_tension(extra_pin: SlotColor | None = None):
    """Tension node: pinned constants, four frequency-12 inputs free.

    ``extra_pin`` optionally pins the first frequency-12 input, which
    should make the gadget unschedulable for any non-blue color.
    """
    inst = dps_instance(
        8,
        [(0, 1, 3), (0, 2, 6), (0, 3, 6), (0, 4, 12), (0, 5, 12), (0, 6, 12), (0, 7, 12)],
    )
    pins = {0: RED, 1: GREEN, 2: PURPLE}
    if extra_pin is not None:
        pins[3] = extra_pin
    names = {"r3": 0, "g6": 1, "p6": 2, "in0": 3, "in1": 4, "in2": 5, "in3": 6}
    return inst, pins, names


# ---------------------------------------------------------------------------
# builders: multi-node cores


def gadget_d3(input_color: SlotColor = RED):
    """3-duplicator core: root plus three relay children.

    Boundary 6-edges are pinned green/purple as the flipper threading
    would force; the input 3-edge is pinned to ``input_color``; relays
    and output copies are free and their colors must come out derived.
    """
    # nodes: 0 root, 1..3 children, rest dummies
    edges = []
    edges.append((0, 4, 3))  # input 3-edge
    edges.append((0, 5, 6))  # root green in
    edges.append((0, 6, 6))  # root purple out
    names = {"in3": 0, "root_g": 1, "root_p": 2}
    pins = {0: input_color, 1: GREEN, 2: PURPLE}
    dummy = 7
    for i, child in enumerate((1, 2, 3)):
        e = len(edges)
        edges.append((0, child, 9))
        names[f"relay{i}"] = e
        e = len(edges)
        edges.append((child, dummy, 6))
        pins[e] = PURPLE
        dummy += 1
        e = len(edges)
        edges.append((child, dummy, 6))
        pins[e] = GREEN
        dummy += 1
        e = len(edges)
        edges.append((child, dummy, 3))
        names[f"copy{i}"] = e
        dummy += 1
        for j in range(2):
            e = len(edges)
            edges.append((child, dummy, 9))
            names[f"relay_out{i}_{j}"] = e
            dummy += 1
    inst = dps_instance(dummy, edges)
    return inst, pins, names


def gadget_d6(kind: str = "P"):
    """6-duplicator core: fan node plus two relay consumers.

    All 3- and 6-constant edges are pinned to the colors their global
    wiring carries; the frequency-12 relays are free and must come out
    in the remaining 6-color's slots.
    """
    dup_color = PURPLE if kind == "P" else GREEN
    edges = []
    pins: dict[int, SlotColor] = {}
    names: dict[str, int] = {}
    # node 0: fan; nodes 1, 2: relay consumers; rest dummies
    e = len(edges)
    edges.append((0, 3, 6))  # seed
    pins[e] = dup_color
    names["seed"] = e
    e = len(edges)
    edges.append((0, 4, 3))  # blue constant in
    pins[e] = BLUE
    e = len(edges)
    edges.append((0, 5, 3))  # red constant out
    pins[e] = RED
    dummy = 6
    for i, consumer in enumerate((1, 2)):
        e = len(edges)
        edges.append((0, consumer, 12))
        names[f"relay{i}"] = e
        e = len(edges)
        edges.append((consumer, dummy, 3))
        pins[e] = RED
        dummy += 1
        e = len(edges)
        edges.append((consumer, dummy, 3))
        pins[e] = BLUE
        dummy += 1
        e = len(edges)
        edges.append((consumer, dummy, 6))
        pins[e] = dup_color
        names[f"out{i}"] = e
        dummy += 1
        e = len(edges)
        edges.append((consumer, dummy, 12))
        names[f"relay_out{i}"] = e
        dummy += 1
    inst = dps_instance(dummy, edges)
    return inst, pins, names


def gadget_or(input_colors: tuple[SlotColor, SlotColor, SlotColor]):
    """OR gadget: three inverters, the central node, two fill nodes.

    Inputs are pinned red or blue per ``input_colors``; the central red
    constant is pinned; the frequency-12 edges and the two 6-edges are
    free.
    """
    for c in input_colors:
        if c not in (RED, BLUE):
            raise ValueError("OR inputs must be red or blue")
    edges = []
    pins: dict[int, SlotColor] = {}
    names: dict[str, int] = {}
    # node 0: OR center; 1..3 inverters; 4, 5 fills; rest dummies
    dummy = 6
    for i, inv in enumerate((1, 2, 3)):
        e = len(edges)
        edges.append((inv, dummy, 3))
        pins[e] = input_colors[i]
        names[f"in{i}"] = e
        dummy += 1
        e = len(edges)
        edges.append((0, inv, 12))
        names[f"inv_out{i}"] = e
    e = len(edges)
    edges.append((0, dummy, 3))
    pins[e] = RED
    dummy += 1
    e = len(edges)
    edges.append((0, 4, 6))
    names["six_a"] = e
    e = len(edges)
    edges.append((0, 5, 6))
    names["six_b"] = e
    e = len(edges)
    edges.append((0, dummy, 12))
    names["out"] = e
    dummy += 1
    inst = dps_instance(dummy, edges)
    return inst, pins, names


# ---------------------------------------------------------------------------
# property checks


def check_true_clock(period: int = 36) -> GadgetCheck:
    inst, pins, names = gadget_true_clock()
    scheds = enumerate_local_schedules(inst, pins, period)
    ok = len(scheds) == 1
    detail = f"{len(scheds)} schedules (expected exactly 1)"
    if ok:
        s = scheds[0]
        pattern = [sorted(s.days[t]) for t in range(6)]
        want = [[names["r3"]], [names["b3"]], [names["g6"]], [names["r3"]], [names["b3"]], [names["p6"]]]
        ok = pattern == want and all(s.days[t] == s.days[t % 6] for t in range(period))
        detail += "; six-day shape " + ("matches" if ok else f"differs: {pattern}")
    return GadgetCheck("true-clock", ok, detail)


def check_variable() -> GadgetCheck:
    inst, pins, names = gadget_variable()
    scheds = enumerate_local_schedules(inst, pins, 6)
    forms = {tuple(sorted(s.days[t])[0] for t in range(6)) for s in scheds}
    a, b, g, p = names["a3"], names["b3"], names["g6"], names["p6"]
    want = {(a, b, g, a, b, p), (b, a, g, b, a, p)}
    ok = len(scheds) == 2 and forms == want
    return GadgetCheck("variable", ok, f"{len(scheds)} schedules, forms {'ok' if ok else forms}")


def check_flipper6() -> GadgetCheck:
    results = []
    for in_color, out_color in ((GREEN, PURPLE), (PURPLE, GREEN)):
        inst, pins, names = gadget_flipper6(in_color)
        scheds = enumerate_local_schedules(inst, pins, 6)
        results.append(
            len(scheds) == 2
            and all(_all_in_color(s, names["six_out"], out_color) for s in scheds)
        )
    ok = all(results)
    return GadgetCheck("flipper6", ok, f"green/purple directions {results}")


def check_flipper3() -> GadgetCheck:
    results = []
    for in3, in6, out3, out6 in ((BLUE, GREEN, RED, PURPLE), (RED, PURPLE, BLUE, GREEN)):
        inst, pins, names = gadget_flipper3(in3, in6)
        scheds = enumerate_local_schedules(inst, pins, 6)
        results.append(
            len(scheds) == 1
            and _all_in_color(scheds[0], names["three_out"], out3)
            and _all_in_color(scheds[0], names["six_out"], out6)
        )
    ok = all(results)
    return GadgetCheck("flipper3", ok, f"both directions {results}")


def check_d3() -> GadgetCheck:
    details = []
    ok = True
    for color, anti in ((RED, BLUE), (BLUE, RED)):
        inst, pins, names = gadget_d3(color)
        scheds = enumerate_local_schedules(inst, pins, 18)
        copies_ok = all(
            _all_in_color(s, names[f"copy{i}"], color) for s in scheds for i in range(3)
        )
        relays = [names[f"relay{i}"] for i in range(3)] + [
            names[f"relay_out{i}_{j}"] for i in range(3) for j in range(2)
        ]
        relays_ok = all(_all_in_color(s, e, anti) for s in scheds for e in relays)
        # 3! phase assignments at the root times 2 output orders per child
        count_ok = len(scheds) == 48
        ok = ok and copies_ok and relays_ok and count_ok
        details.append(f"{color.value}: n={len(scheds)} copies={copies_ok} relays={relays_ok}")
    return GadgetCheck("d3", ok, "; ".join(details))


def check_d6() -> GadgetCheck:
    details = []
    ok = True
    for kind, relay_color in (("P", GREEN), ("G", PURPLE)):
        inst, pins, names = gadget_d6(kind)
        scheds = enumerate_local_schedules(inst, pins, 12)
        relays = [names["relay0"], names["relay1"], names["relay_out0"], names["relay_out1"]]
        relays_ok = all(_all_in_color(s, e, relay_color) for s in scheds for e in relays)
        count_ok = len(scheds) == 2  # the two fan orders
        ok = ok and relays_ok and count_ok
        details.append(f"{kind}: n={len(scheds)} relays={relays_ok}")
    return GadgetCheck("d6", ok, "; ".join(details))


def check_or() -> GadgetCheck:
    """Blue output exists iff at least one input is red, over all eight
    input colorings."""
    details = []
    ok = True
    for bits in range(8):
        colors = tuple(RED if bits >> i & 1 else BLUE for i in range(3))
        inst, pins, names = gadget_or(colors)  # type: ignore[arg-type]
        scheds = enumerate_local_schedules(inst, pins, 12)
        if not scheds:
            ok = False
            details.append(f"{bits:03b}: unschedulable")
            continue
        blue_out = any(_all_in_color(s, names["out"], BLUE) for s in scheds)
        want = any(c == RED for c in colors)
        if blue_out != want:
            ok = False
        details.append(f"{bits:03b}: blue-out={blue_out} want={want}")
    return GadgetCheck("or", ok, "; ".join(details))


def check_tension() -> GadgetCheck:
    inst, pins, names = gadget_tension()
    scheds = enumerate_local_schedules(inst, pins, 12)
    inputs = [names[f"in{i}"] for i in range(4)]
    all_blue = all(_all_in_color(s, e, BLUE) for s in scheds for e in inputs)
    count_ok = len(scheds) == 24  # 4! ways to spread the inputs over the blue slots
    inst2, pins2, _ = gadget_tension(extra_pin=GREEN)
    blocked = enumerate_local_schedules(inst2, pins2, 12)
    ok = all_blue and count_ok and not blocked
    return GadgetCheck(
        "tension", ok, f"n={len(scheds)} all-blue={all_blue}; green-pinned admits {len(blocked)}"
    )


ALL_CHECKS: tuple[Callable[[], GadgetCheck], ...] = (
    check_true_clock,
    check_variable,
    check_flipper6,
    check_flipper3,
    check_d3,
    check_d6,
    check_or,
    check_tension,
)


def verify_gadget_properties() -> list[GadgetCheck]:
    """Run the whole gadget battery; every check must come back ok."""
    return [check() for check in ALL_CHECKS]
