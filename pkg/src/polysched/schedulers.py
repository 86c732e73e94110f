"""Scheduling algorithms: the online threshold heuristic, edge-coloring
round-robins, the power-of-two greedy scheduler, the low-density
scheduler, and period compaction.

Day convention of the threshold heuristic ("reduce fastest"): edges are
*selected* each morning, on heats accumulated over previous full days;
desire grows during the day; selected edges are cut at dusk, so the cut
heat includes the cut day's growth.  Under this convention an edge of
growth rate ``g`` whose morning heat just reached the threshold and
that is then blocked for ``k`` days is cut with heat ``threshold +
(k + 1) g`` exactly, which is what makes the adversarial complete-graph
family reach ``x + 2 - 1/(n-1)`` while the ``x + 2`` ceiling for
``x >= 4`` still holds: the blocking volume argument bounds the blocked
days by ``2(1 - g)/g`` strictly, and
``(x + g) + (2(1 - g)/g) g + g = x + 2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import _backend
from .core import (
    DpsInstance,
    OpsInstance,
    PreconditionError,
    Schedule,
    gstar,
    heat,
    local_density,
    max_degree,
    schedule,
)


# ---------------------------------------------------------------------------
# Reduce-Fastest


@dataclass(frozen=True)
class RfConfig:
    """Threshold multiplier ``x``, simulated days, optional tie order.

    ``tie_order``, when given, must be a permutation of all edge indices;
    it breaks ties among equal growth rates ahead of the edge index.
    """

    x: Fraction
    horizon: int
    tie_order: tuple[int, ...] | None = None


@dataclass(frozen=True)
class RfTrace:
    schedule_prefix: tuple[frozenset[int], ...]
    max_heat_seen: Fraction
    day_of_max: int
    heats_final: Mapping[int, Fraction]


def period_estimate(inst: OpsInstance, x: Fraction) -> int:
    """Days for the slowest edge to cycle once at the cut ceiling.

    An edge of growth ``g`` is cut at heat below ``x + 2`` (for ``x >= 4``),
    so consecutive cuts are at most ``(x + 2)/g`` days apart; the slowest
    edge dominates.
    """
    gmin = min(inst.growth)
    q = (Fraction(x) + 2) / gmin
    return -((-q.numerator) // q.denominator)


def reduce_fastest(inst: OpsInstance, cfg: RfConfig, force_pure: bool = False) -> RfTrace:
    """Simulate the threshold-matching heuristic for ``cfg.horizon`` days.

    Every morning the edges are scanned by decreasing growth rate (ties:
    ``cfg.tie_order`` position, then edge index) and greedily added to
    the day's matching when their morning heat is at least
    ``x * gstar(inst)`` and both endpoints are still free.  All heats
    start at zero.  The trace records the maximum heat ever experienced:
    cut heats (including the cut day's growth) and the heats left at the
    end of the horizon.

    The whole simulation runs in exact integer arithmetic over the
    common denominator of the growth rates.
    """
    if not inst.edges:
        raise PreconditionError("cannot simulate an empty instance")
    if cfg.horizon < 1:
        raise PreconditionError("horizon must be >= 1")
    if cfg.x <= 0:
        raise PreconditionError("threshold multiplier must be positive")
    m = len(inst.edges)
    if cfg.tie_order is not None and sorted(cfg.tie_order) != list(range(m)):
        raise PreconditionError("tie_order must be a permutation of all edge indices")
    if cfg.x < 2:
        warnings.warn(
            "threshold multipliers below 2 can let the maximum heat grow without bound",
            RuntimeWarning,
            stacklevel=2,
        )

    x = Fraction(cfg.x)
    gs = gstar(inst)
    denom = math.lcm(*(g.denominator for g in inst.growth))
    denom = math.lcm(denom, gs.denominator)
    gnum = [int(g * denom) for g in inst.growth]
    astar = int(gs * denom)
    tie_pos = {e: i for i, e in enumerate(cfg.tie_order)} if cfg.tie_order else None
    order = sorted(
        range(m),
        key=(lambda e: (-gnum[e], tie_pos[e])) if tie_pos else (lambda e: (-gnum[e], e)),
    )
    eu = [e.u for e in inst.edges]
    ev = [e.v for e in inst.edges]

    best, best_day, d_final, day_counts, flat = _backend.rf_simulate(
        len(inst.people),
        eu,
        ev,
        gnum,
        order,
        x.numerator,
        x.denominator,
        astar,
        cfg.horizon,
        force_pure=force_pure,
    )

    empty = frozenset()
    days = []
    pos = 0
    for cnt in day_counts:
        if cnt:
            days.append(frozenset(flat[pos : pos + cnt]))
            pos += cnt
        else:
            days.append(empty)
    return RfTrace(
        schedule_prefix=tuple(days),
        max_heat_seen=Fraction(best, denom),
        day_of_max=best_day,
        heats_final={e: Fraction(gnum[e] * d_final[e], denom) for e in range(m)},
    )


# ---------------------------------------------------------------------------
# Edge coloring (constructive max-degree-plus-one) and round-robin schedules


@dataclass(frozen=True)
class EdgeColoring:
    """Proper edge coloring; ``colors[e]`` in ``[0, num_colors)``."""

    colors: Mapping[int, int]
    num_colors: int


def color_edges(inst: OpsInstance | DpsInstance) -> EdgeColoring:
    """Proper edge coloring with at most ``max_degree + 1`` colors.

    Fan-rotation construction: each uncolored edge anchors a maximal fan
    at one endpoint; inverting a two-color alternating path and rotating
    a fan prefix always frees a color for the edge.  Deterministic: edges
    are processed by index, colors tried in increasing order.
    """
    m = len(inst.edges)
    delta = max_degree(inst)
    ncolors = delta + 1
    col: list[int | None] = [None] * m
    vcol: list[dict[int, int]] = [dict() for _ in inst.people]  # vertex -> color -> edge

    def other(e: int, x: int) -> int:
        ed = inst.edges[e]
        return ed.v if ed.u == x else ed.u

    def set_color(e: int, c: int | None) -> None:
        old = col[e]
        ed = inst.edges[e]
        if old is not None:
            del vcol[ed.u][old]
            del vcol[ed.v][old]
        col[e] = c
        if c is not None:
            vcol[ed.u][c] = e
            vcol[ed.v][c] = e

    def free_color(vx: int) -> int:
        for c in range(ncolors):
            if c not in vcol[vx]:
                return c
        raise AssertionError("no free color at a vertex of degree <= delta")

    def is_free(vx: int, c: int) -> bool:
        return c not in vcol[vx]

    for e0 in range(m):
        u = inst.edges[e0].u
        v0 = inst.edges[e0].v
        # maximal fan of u starting at v0: each next edge's color is free
        # at the previous fan vertex
        fan = [v0]
        fan_edges = [e0]
        while True:
            last = fan[-1]
            nxt = None
            for c in range(ncolors):
                if is_free(last, c) and c in vcol[u]:
                    cand = vcol[u][c]
                    w = other(cand, u)
                    if w not in fan:
                        nxt = (w, cand)
                        break
            if nxt is None:
                break
            fan.append(nxt[0])
            fan_edges.append(nxt[1])

        c = free_color(u)
        d = free_color(fan[-1])
        if c != d:
            # invert the maximal c/d alternating path starting at u (its
            # first edge, if any, is d-colored since c is free at u)
            path = []
            x, want = u, d
            while want in vcol[x]:
                pe = vcol[x][want]
                path.append(pe)
                x = other(pe, x)
                want = c if want == d else d
            # uncolor the whole path before swapping: alternating edges
            # share vertices and in-place swaps corrupt the color maps
            flips = [(pe, c if col[pe] == d else d) for pe in path]
            for pe, _ in flips:
                set_color(pe, None)
            for pe, nc in flips:
                set_color(pe, nc)

        # pick the shortest fan prefix ending at a vertex with d free that
        # is still a valid fan after the inversion, rotate it, close with d
        chosen = -1
        for j in range(len(fan)):
            if not is_free(fan[j], d):
                continue
            ok = True
            for i in range(j):
                cc = col[fan_edges[i + 1]]
                if cc is None or not is_free(fan[i], cc):
                    ok = False
                    break
            if ok:
                chosen = j
                break
        if chosen < 0:
            raise AssertionError("fan rotation found no valid prefix")
        # uncolor the whole prefix before recoloring: the shift reuses
        # colors within the prefix and in-place updates would corrupt the
        # per-vertex color maps
        shifted = [col[fan_edges[i + 1]] for i in range(chosen)]
        for i in range(chosen + 1):
            set_color(fan_edges[i], None)
        for i in range(chosen):
            set_color(fan_edges[i], shifted[i])
        set_color(fan_edges[chosen], d)

    used = sorted({c for c in col if c is not None})
    remap = {c: i for i, c in enumerate(used)}
    final = {e: remap[col[e]] for e in range(m)}
    for vx in range(len(inst.people)):
        seen = [final[e] for e in range(m) if inst.edges[e].touches(vx)]
        if len(seen) != len(set(seen)):
            raise AssertionError("edge coloring is not proper")
    if len(used) > delta + 1:
        raise AssertionError("edge coloring used more than delta+1 colors")
    return EdgeColoring(final, len(used))


def color_schedule(inst: OpsInstance | DpsInstance, coloring: EdgeColoring) -> Schedule:
    """Round-robin of the color classes: day ``t`` is class ``t mod C``.

    Every edge recurs exactly every ``C`` days.
    """
    c = coloring.num_colors
    days = [set() for _ in range(c)]
    for e, cl in coloring.colors.items():
        days[cl].add(e)
    return schedule(days)


# ---------------------------------------------------------------------------
# Power-of-two greedy scheduler and the density-threshold scheduler


def polygreedy(inst: DpsInstance) -> Schedule:
    """First-fit scheduler for power-of-two frequencies.

    Hypotheses (checked): every frequency is a power of two and every
    person's local density is at most 1/2.  Edges are placed by
    ascending frequency (ties by index) at the first conflict-free slot
    and repeated every ``f`` slots over a period of ``f_max``; under the
    hypotheses a slot always exists among the first ``f`` and every
    edge's recurrence comes out exactly ``f``.
    """
    if not inst.edges:
        raise PreconditionError("cannot schedule an empty instance")
    for e in inst.edges:
        f = inst.freq[e.index]
        if f & (f - 1):
            raise PreconditionError(f"hypothesis violated: frequency {f} of edge {e.index} is not a power of two")
    _, peak = local_density(inst)
    if peak > Fraction(1, 2):
        raise PreconditionError(f"hypothesis violated: local density {peak} exceeds 1/2")

    fmax = max(inst.freq)
    days: list[set[int]] = [set() for _ in range(fmax)]
    busy: list[set[int]] = [set() for _ in range(fmax)]
    for e in sorted(inst.edges, key=lambda e: (inst.freq[e.index], e.index)):
        f = inst.freq[e.index]
        slot = -1
        for t in range(fmax):
            if e.u not in busy[t] and e.v not in busy[t]:
                slot = t
                break
        if slot < 0 or slot >= f:
            raise AssertionError("no conflict-free slot among the first f; hypotheses should forbid this")
        for k in range(fmax // f):
            t = slot + k * f
            days[t].add(e.index)
            busy[t].update((e.u, e.v))
    return schedule(days)


def schedule_low_density(inst: DpsInstance) -> Schedule:
    """Schedule any instance whose local density is at most 1/4.

    Frequencies are rounded down to powers of two, which at most doubles
    every density, and the power-of-two greedy scheduler runs on the
    rounded instance.  Rounded deadlines are only tighter, so the result
    validates against the original frequencies.  Densities above 1/4
    are refused: no guarantee exists there.
    """
    if not inst.edges:
        raise PreconditionError("cannot schedule an empty instance")
    _, peak = local_density(inst)
    if peak > Fraction(1, 4):
        raise PreconditionError(
            f"local density {peak} exceeds the 1/4 threshold; no schedulability guarantee"
        )
    rounded = DpsInstance(
        inst.people, inst.edges, tuple(1 << (f.bit_length() - 1) for f in inst.freq)
    )
    return polygreedy(rounded)


# ---------------------------------------------------------------------------
# Compaction: polynomial-period schedule within 4x the heat


def compact(inst: OpsInstance, arbitrary: Schedule) -> Schedule:
    """Fold an arbitrary covering schedule into period ``2C``.

    ``C`` is the color count of a proper edge coloring.  The output
    alternates the first ``C`` days of the input (even days) with the
    color-class round-robin (odd days).  Edges appearing in the truncated
    prefix keep at most twice their truncated recurrence; all others
    recur exactly every ``2C`` days; combined, the heat is at most four
    times the heat of the input read as one period.
    """
    coloring = color_edges(inst)
    c = coloring.num_colors
    if arbitrary.period < c:
        raise PreconditionError(f"arbitrary schedule must be at least {c} days long")
    report = heat(arbitrary, inst)
    if report.heat is None:
        raise PreconditionError("arbitrary schedule misses an edge entirely; its heat is infinite")
    rr = color_schedule(inst, coloring)
    days: list[frozenset[int]] = []
    for k in range(c):
        days.append(arbitrary.days[k])
        days.append(rr.days[k])
    out = schedule(days)
    out_heat = heat(out, inst).heat
    if out_heat is None or out_heat > 4 * report.heat:
        raise AssertionError("compaction exceeded the 4x heat guarantee")
    return out
