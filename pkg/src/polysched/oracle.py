"""Ground-truth brute force: decision feasibility, optimal heat on tiny
instances, and exhaustive enumeration of gadget-local schedules.

Feasibility is a safety game over urgency vectors (days since each edge
was last scheduled).  A periodic schedule exists iff the region of
states from which death is avoidable forever contains a cycle reachable
from the all-zero state; all-zero dominates every live state
componentwise, so starting there loses nothing, and any cycle found is
itself a valid schedule from a fresh start.  Actions are all matchings,
including the empty one and non-maximal ones: restricting to maximal
matchings is plausibly harmless but is not assumed anywhere.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .converters import ops_to_dps
from .core import (
    DpsInstance,
    InstanceError,
    OpsInstance,
    RefusalError,
    Schedule,
    connected_components,
    gstar,
    schedule,
)
from .schedulers import color_edges, color_schedule, heat

DEFAULT_GUARD = 2_000_000


def state_space_guard() -> int:
    """Oracle state-space budget; overridable via POLYSCHED_GUARD."""
    raw = os.environ.get("POLYSCHED_GUARD")
    return int(raw) if raw else DEFAULT_GUARD


# ---------------------------------------------------------------------------
# slot colors


class SlotColor(Enum):
    """Residue classes of days modulo 3 and 6 anchoring the reduction.

    Red and blue recur every 3 days; green and purple every 6.
    """

    RED = "red"
    BLUE = "blue"
    GREEN = "green"
    PURPLE = "purple"


def slot_color(t: int) -> SlotColor:
    """Color of day ``t``: red 0 mod 3, blue 1 mod 3, green 2 mod 6, purple 5 mod 6."""
    if t < 0:
        raise ValueError("days are indexed from 0")
    r = t % 3
    if r == 0:
        return SlotColor.RED
    if r == 1:
        return SlotColor.BLUE
    return SlotColor.GREEN if t % 6 == 2 else SlotColor.PURPLE


def slot_days(color: SlotColor, period: int) -> frozenset[int]:
    return frozenset(t for t in range(period) if slot_color(t) == color)


# ---------------------------------------------------------------------------
# feasibility


@dataclass(frozen=True)
class OracleResult:
    status: str  # "feasible" | "infeasible" | "refused"
    schedule: Schedule | None = None
    detail: str = ""

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def all_matchings(inst: DpsInstance, edge_subset: Sequence[int] | None = None) -> list[frozenset[int]]:
    """Every matching (including the empty one) over the given edges."""
    edges = list(edge_subset) if edge_subset is not None else [e.index for e in inst.edges]
    masks = {e: (1 << inst.edges[e].u) | (1 << inst.edges[e].v) for e in edges}
    out: list[frozenset[int]] = []

    def extend(i: int, chosen: list[int], busy: int) -> None:
        if i == len(edges):
            out.append(frozenset(chosen))
            return
        extend(i + 1, chosen, busy)
        e = edges[i]
        if not masks[e] & busy:
            chosen.append(e)
            extend(i + 1, chosen, busy | masks[e])
            chosen.pop()

    extend(0, [], 0)
    return sorted(out, key=lambda s: sorted(s))


def _component_feasible(inst: DpsInstance, comp: list[int], guard: int) -> tuple[bool, list[frozenset[int]]]:
    """Safety-game search over one connected component.

    States are end-of-day urgency vectors: days since each edge was last
    serviced, starting from all-zero (every deadline maximally relaxed).
    Scheduling an edge at urgency ``s`` realizes a gap of ``s + 1``, so
    an edge at urgency ``f - 1`` must be scheduled today and urgencies
    stay in ``[0, f - 1]``.
    """
    freqs = [inst.freq[e] for e in comp]
    size = 1
    for f in freqs:
        size *= f + 1
        if size > guard:
            raise RefusalError(
                f"state space {'>'}{guard} exceeds the oracle guard; refusing"
            )
    actions = all_matchings(inst, comp)
    k = len(comp)
    start = tuple([0] * k)

    def successors(state: tuple[int, ...]) -> list[tuple[frozenset[int], tuple[int, ...]]]:
        out = []
        for act in actions:
            nxt = list(state)
            dead = False
            for i in range(k):
                if comp[i] in act:
                    nxt[i] = 0
                else:
                    if state[i] >= freqs[i] - 1:
                        dead = True
                        break
                    nxt[i] = state[i] + 1
            if not dead:
                out.append((act, tuple(nxt)))
        return out

    # forward reachability
    succ_map: dict[tuple[int, ...], list[tuple[frozenset[int], tuple[int, ...]]]] = {}
    frontier = [start]
    succ_map[start] = successors(start)
    while frontier:
        nfrontier = []
        for s in frontier:
            for _, t in succ_map[s]:
                if t not in succ_map:
                    succ_map[t] = successors(t)
                    nfrontier.append(t)
        frontier = nfrontier

    # iterated pruning by reverse elimination: kill states whose every
    # successor is dead, propagating through predecessor lists
    outdeg: dict[tuple[int, ...], int] = {}
    preds: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for s, succs in succ_map.items():
        outdeg[s] = len(succs)
        for _, t in succs:
            preds.setdefault(t, []).append(s)
    dead = [s for s, dg in outdeg.items() if dg == 0]
    alive = set(succ_map)
    while dead:
        t = dead.pop()
        if t not in alive:
            continue
        alive.discard(t)
        for s in preds.get(t, ()):
            if s in alive:
                outdeg[s] -= 1
                if outdeg[s] == 0:
                    dead.append(s)
    if start not in alive:
        return False, []

    # walk the first surviving successor until a state repeats; the loop
    # part is a valid periodic schedule (all-zero dominates every state
    # on it, so the capped semantics admit it from a fresh start)
    seen: dict[tuple[int, ...], int] = {}
    days: list[frozenset[int]] = []
    s = start
    while s not in seen:
        seen[s] = len(days)
        act, t = next((a, t) for a, t in succ_map[s] if t in alive)
        days.append(act)
        s = t
    cycle = days[seen[s] :]
    return True, cycle


def dps_feasible(inst: DpsInstance, guard: int | None = None) -> OracleResult:
    """Decide feasibility by exhaustive safety-game search.

    Connected components are independent, so the search runs per
    component (the guard applies to each component's state space) and
    the per-component cycles are merged over their lcm period.
    """
    if guard is None:
        guard = state_space_guard()
    if not inst.edges:
        return OracleResult("feasible", schedule([[]]))
    comps = connected_components(inst)
    cycles: list[list[frozenset[int]]] = []
    try:
        for comp in comps:
            ok, cycle = _component_feasible(inst, comp, guard)
            if not ok:
                return OracleResult("infeasible")
            cycles.append(cycle)
    except RefusalError as exc:
        return OracleResult("refused", detail=str(exc))
    period = math.lcm(*(len(c) for c in cycles))
    if period > max(guard, 1):
        return OracleResult("refused", detail=f"combined period {period} exceeds the guard")
    days = [frozenset().union(*(c[t % len(c)] for c in cycles)) for t in range(period)]
    return OracleResult("feasible", schedule(days))


def optimal_heat(inst: OpsInstance, guard: int | None = None) -> Fraction:
    """Exact optimal heat of a tiny instance.

    The optimum has the form ``g(e) * r`` for an edge and an integer
    recurrence, and feasibility of the deadline instance for target heat
    ``h`` is monotone in ``h``, so a binary search over the candidate
    grid ``{g(e) * k}`` bounded above by the color round-robin's heat
    finds it.  Raises :class:`RefusalError` when the state space exceeds
    the guard.
    """
    if not inst.edges:
        raise InstanceError("optimal heat undefined for an empty edge set")
    rr_heat = heat(color_schedule(inst, color_edges(inst)), inst).heat
    assert rr_heat is not None
    lower = gstar(inst)
    cands = sorted(
        {
            g * k
            for g in set(inst.growth)
            for k in range(1, int(rr_heat / g) + 1)
            if lower <= g * k <= rr_heat
        }
        | {rr_heat}
    )

    def feasible_at(h: Fraction) -> bool:
        res = dps_feasible(ops_to_dps(inst, h), guard)
        if res.status == "refused":
            raise RefusalError(res.detail)
        return res.feasible

    lo, hi = 0, len(cands) - 1
    if not feasible_at(cands[hi]):
        raise AssertionError("round-robin heat candidate must be feasible")
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible_at(cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


# ---------------------------------------------------------------------------
# exhaustive gadget-local schedules


def enumerate_local_schedules(
    inst: DpsInstance,
    pinned: Mapping[int, SlotColor],
    period: int,
    limit: int = 5_000_000,
) -> list[Schedule]:
    """All cyclic schedules of ``period`` days satisfying the instance,
    with every pinned edge confined to slots of its color.

    The search walks days in order, choosing a matching per day among
    the slot-admissible edges.  Pruning: an edge due today must be
    scheduled today, an edge never seen must first appear within its
    first ``f`` days (otherwise the cyclic wrap gap is already too
    long), and the cyclic wrap is checked when the last day closes.

    ``period`` must be a multiple of 6 and of every frequency.
    """
    if period % 6:
        raise InstanceError("period must be a multiple of 6")
    for f in inst.freq:
        if period % f:
            raise InstanceError(f"period must be a multiple of every frequency; {f} does not divide {period}")
    m = len(inst.edges)
    emask = [(1 << inst.edges[e].u) | (1 << inst.edges[e].v) for e in range(m)]
    allowed: list[list[int]] = []
    for t in range(period):
        col = slot_color(t)
        allowed.append([e for e in range(m) if pinned.get(e) is None or pinned[e] == col])
    incident: list[list[int]] = [[] for _ in inst.people]
    for e in range(m):
        incident[inst.edges[e].u].append(e)
        incident[inst.edges[e].v].append(e)

    days: list[frozenset[int]] = [frozenset()] * period
    last = [-1] * m  # day of last occurrence, -1 if unseen
    first = [-1] * m
    results: list[Schedule] = []
    explored = 0

    def min_future_occurrences(e: int, t: int) -> int:
        """Occurrences edge ``e`` still needs in days ``[t, period)``.

        Lower bound from scheduling as late as possible: the deadline
        chain from the last occurrence (or from the latest admissible
        first occurrence, ``f - 1``, while unseen) plus the cyclic wrap
        requirement that the final occurrence reach ``period + first - f``.
        """
        f = inst.freq[e]
        if last[e] < 0:
            deadline = f - 1
            return 1 + (period - 1 - deadline) // f if deadline < period else 0
        cnt = 0
        deadline = last[e] + f
        if deadline < period:
            cnt = 1 + (period - 1 - deadline) // f
        need_last = period + first[e] - f
        if last[e] < need_last:
            cnt = max(cnt, -(-(need_last - last[e]) // f))
        return cnt

    def capacity_ok(t: int) -> bool:
        budget = period - t
        for edges_at in incident:
            needed = 0
            for e in edges_at:
                needed += min_future_occurrences(e, t)
                if needed > budget:
                    return False
        return True

    def close_cycle() -> None:
        for e in range(m):
            if first[e] < 0:
                return
            if first[e] + period - last[e] > inst.freq[e]:
                return
        results.append(Schedule(period, tuple(days)))

    def day_choices(t: int) -> list[list[int]] | None:
        """Matchings over today's admissible edges that contain every due edge."""
        due = []
        optional = []
        for e in allowed[t]:
            f = inst.freq[e]
            if last[e] >= 0 and t - last[e] == f:
                due.append(e)
            elif last[e] < 0 and t == f - 1:
                due.append(e)
            else:
                optional.append(e)
        # any admissible-but-not-chosen edge that is due dies; edges due
        # today but not admissible today kill the branch outright
        for e in range(m):
            if e in allowed[t]:
                continue
            f = inst.freq[e]
            if (last[e] >= 0 and t - last[e] == f) or (last[e] < 0 and t == f - 1):
                return None
        busy = 0
        for e in due:
            if emask[e] & busy:
                return None
            busy |= emask[e]
        choices: list[list[int]] = []

        def extend(i: int, chosen: list[int], b: int) -> None:
            if i == len(optional):
                choices.append(due + chosen)
                return
            extend(i + 1, chosen, b)
            e = optional[i]
            if not emask[e] & b:
                chosen.append(e)
                extend(i + 1, chosen, b | emask[e])
                chosen.pop()

        extend(0, [], busy)
        return choices

    def walk(t: int) -> None:
        nonlocal explored
        explored += 1
        if explored > limit:
            raise RefusalError(f"local-schedule enumeration exceeded {limit} nodes")
        if t == period:
            close_cycle()
            return
        if not capacity_ok(t):
            return
        choices = day_choices(t)
        if choices is None:
            return
        for pick in choices:
            saved = [(e, last[e], first[e]) for e in pick]
            days[t] = frozenset(pick)
            for e in pick:
                if first[e] < 0:
                    first[e] = t
                last[e] = t
            walk(t + 1)
            for e, l, fst in saved:
                last[e] = l
                first[e] = fst
        days[t] = frozenset()

    walk(0)
    results.sort(key=lambda s: tuple(sorted(d) for d in s.days))
    return results
