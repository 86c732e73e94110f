"""Instance and schedule data model for periodic matching scheduling.

Two problem flavours share one graph model of people (vertices) and
relationships (edges), with one meeting per person per day:

* optimisation instances carry a positive rational growth rate ``g(e)``
  per edge; a schedule is judged by its *heat*, the largest product of
  growth rate and recurrence time over all edges;
* decision instances carry a positive integer frequency ``f(e)`` per
  edge; a schedule is feasible when every edge recurs within every
  window of ``f(e)`` days.

Schedules are finite lists of matchings interpreted as repeating
forever, so recurrence times always count the wraparound gap from the
last occurrence in one period to the first occurrence in the next.

All rate arithmetic uses :class:`fractions.Fraction`; the bounds proved
about these problems are strict inequalities, so no floating point is
allowed anywhere on a correctness path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class PolyschedError(Exception):
    """Base class for all errors raised by this package."""


class InstanceError(PolyschedError):
    """Malformed instance data (bad ids, parallel edges, bad rates)."""


class ValidationError(PolyschedError):
    """A schedule is structurally incompatible with an instance."""


class PreconditionError(PolyschedError):
    """An algorithm's hypothesis does not hold for the given input."""


class RefusalError(PolyschedError):
    """Input exceeds a configured resource guard; result not computed."""


@dataclass(frozen=True)
class Person:
    id: int
    label: str | None = None


@dataclass(frozen=True)
class Edge:
    """Undirected edge; endpoints are person ids, ``u < v`` canonically.

    ``index`` is the edge's stable identity inside its instance and is
    the unit of deterministic tie-breaking everywhere.
    """

    u: int
    v: int
    index: int

    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)

    def touches(self, person: int) -> bool:
        return person == self.u or person == self.v


def _check_graph(people: Sequence[Person], edges: Sequence[Edge]) -> None:
    n = len(people)
    if [p.id for p in people] != list(range(n)):
        raise InstanceError("person ids must be dense 0..n-1 in order")
    seen_pairs: set[tuple[int, int]] = set()
    for i, e in enumerate(edges):
        if e.index != i:
            raise InstanceError(f"edge index {e.index} at position {i}; indices must be dense")
        if not (0 <= e.u < n and 0 <= e.v < n):
            raise InstanceError(f"edge {e.index} endpoint out of range")
        if e.u == e.v:
            raise InstanceError(f"edge {e.index} is a self-loop")
        if e.u > e.v:
            raise InstanceError(f"edge {e.index} endpoints not canonical (u < v)")
        if (e.u, e.v) in seen_pairs:
            raise InstanceError(f"parallel edge {e.index} on pair {(e.u, e.v)}")
        seen_pairs.add((e.u, e.v))


@dataclass(frozen=True)
class OpsInstance:
    """Optimisation instance: graph plus growth rate per edge."""

    people: tuple[Person, ...]
    edges: tuple[Edge, ...]
    growth: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_graph(self.people, self.edges)
        if len(self.growth) != len(self.edges):
            raise InstanceError("one growth rate per edge required")
        for i, g in enumerate(self.growth):
            if not isinstance(g, Fraction) or g <= 0:
                raise InstanceError(f"growth of edge {i} must be a positive Fraction")

    def growth_of(self, e: Edge | int) -> Fraction:
        return self.growth[e.index if isinstance(e, Edge) else e]


@dataclass(frozen=True)
class DpsInstance:
    """Decision instance: graph plus integer meeting frequency per edge."""

    people: tuple[Person, ...]
    edges: tuple[Edge, ...]
    freq: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_graph(self.people, self.edges)
        if len(self.freq) != len(self.edges):
            raise InstanceError("one frequency per edge required")
        for i, f in enumerate(self.freq):
            if not isinstance(f, int) or isinstance(f, bool) or f < 1:
                raise InstanceError(f"frequency of edge {i} must be an integer >= 1")

    def freq_of(self, e: Edge | int) -> int:
        return self.freq[e.index if isinstance(e, Edge) else e]


def ops_instance(
    people: int | Sequence[str | None],
    weighted_edges: Iterable[tuple[int, int, Fraction | int]],
) -> OpsInstance:
    """Build an :class:`OpsInstance` from ``(u, v, growth)`` triples."""
    persons = _mk_people(people)
    edges, values = _mk_edges(weighted_edges)
    return OpsInstance(persons, edges, tuple(Fraction(v) for v in values))


def dps_instance(
    people: int | Sequence[str | None],
    weighted_edges: Iterable[tuple[int, int, int]],
) -> DpsInstance:
    """Build a :class:`DpsInstance` from ``(u, v, freq)`` triples."""
    persons = _mk_people(people)
    edges, values = _mk_edges(weighted_edges)
    return DpsInstance(persons, edges, tuple(values))


def _mk_people(people: int | Sequence[str | None]) -> tuple[Person, ...]:
    if isinstance(people, int):
        return tuple(Person(i) for i in range(people))
    return tuple(Person(i, lbl) for i, lbl in enumerate(people))


def _mk_edges(weighted_edges) -> tuple[tuple[Edge, ...], list]:
    edges = []
    values = []
    for i, (u, v, w) in enumerate(weighted_edges):
        a, b = (u, v) if u < v else (v, u)
        edges.append(Edge(a, b, i))
        values.append(w)
    return tuple(edges), values


@dataclass(frozen=True)
class Schedule:
    """Finite periodic schedule: ``days[t % period]`` is day ``t``'s matching.

    Days hold edge indices.  Empty days are legal.  Whether each day is
    actually a matching depends on the instance and is checked by
    :func:`heat` and :func:`validate_dps`.
    """

    period: int
    days: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.period < 1 or len(self.days) != self.period:
            raise ValidationError("schedule must have period >= 1 matching its day list")

    def day(self, t: int) -> frozenset[int]:
        return self.days[t % self.period]


def schedule(days: Iterable[Iterable[int]]) -> Schedule:
    frozen = tuple(frozenset(d) for d in days)
    return Schedule(len(frozen), frozen)


@dataclass(frozen=True)
class HeatReport:
    """Heat of a schedule with the per-edge breakdown.

    ``heat`` is ``None`` when some edge never occurs (infinite heat);
    the corresponding per-edge entries then have recurrence ``None``.
    """

    heat: Fraction | None
    per_edge: Mapping[int, tuple[int | None, Fraction | None]]


@dataclass(frozen=True)
class Violation:
    kind: str  # "conflict" | "unknown-edge" | "missed" | "recurrence"
    day: int | None
    edges: tuple[int, ...]
    detail: str


def day_conflicts(inst: OpsInstance | DpsInstance, day: Iterable[int]) -> list[int]:
    """People booked twice on a day; empty list means the day is a matching."""
    busy: set[int] = set()
    doubled: list[int] = []
    for ei in day:
        e = inst.edges[ei]
        for p in (e.u, e.v):
            if p in busy:
                doubled.append(p)
            busy.add(p)
    return doubled


def recurrence_time(
    sched: Schedule, e: Edge | int, inst: OpsInstance | DpsInstance | None = None
) -> int | None:
    """Max gap between consecutive occurrences of ``e``, with wraparound.

    Returns ``None`` when the edge never appears (infinite recurrence).
    An edge present every day has recurrence 1.
    """
    idx = e.index if isinstance(e, Edge) else e
    if inst is not None and not (0 <= idx < len(inst.edges)):
        raise InstanceError(f"unknown edge index {idx}")
    if idx < 0:
        raise InstanceError(f"unknown edge index {idx}")
    occurrences = [t for t in range(sched.period) if idx in sched.days[t]]
    if not occurrences:
        return None
    gaps = [b - a for a, b in zip(occurrences, occurrences[1:])]
    gaps.append(occurrences[0] + sched.period - occurrences[-1])
    return max(gaps)


def heat(sched: Schedule, inst: OpsInstance) -> HeatReport:
    """Exact heat ``max_e g(e) * r(e)`` of a periodic schedule.

    Raises :class:`ValidationError` if some day is not a matching or the
    schedule references an unknown edge.  An edge that never occurs makes
    the heat infinite, reported as ``None``.
    """
    m = len(inst.edges)
    for t, day in enumerate(sched.days):
        for ei in day:
            if not (0 <= ei < m):
                raise ValidationError(f"day {t} references unknown edge {ei}")
        doubled = day_conflicts(inst, day)
        if doubled:
            raise ValidationError(f"day {t} is not a matching; double-booked people {doubled}")
    per_edge: dict[int, tuple[int | None, Fraction | None]] = {}
    worst: Fraction | None = Fraction(0)
    for e in inst.edges:
        r = recurrence_time(sched, e)
        if r is None:
            per_edge[e.index] = (None, None)
            worst = None
        else:
            contrib = inst.growth[e.index] * r
            per_edge[e.index] = (r, contrib)
            if worst is not None and contrib > worst:
                worst = contrib
    return HeatReport(worst, per_edge)


def validate_dps(sched: Schedule, inst: DpsInstance) -> list[Violation]:
    """All ways ``sched`` fails the decision instance; empty means feasible.

    Violations are data, not errors: conflicts (a day is not a matching),
    unknown edge indices, edges never scheduled, and recurrence times
    exceeding the edge frequency under the periodic interpretation.
    """
    out: list[Violation] = []
    m = len(inst.edges)
    for t, day in enumerate(sched.days):
        unknown = tuple(sorted(ei for ei in day if not (0 <= ei < m)))
        if unknown:
            out.append(Violation("unknown-edge", t, unknown, "edge index outside instance"))
        known = [ei for ei in day if 0 <= ei < m]
        doubled = day_conflicts(inst, known)
        if doubled:
            out.append(
                Violation("conflict", t, tuple(sorted(known)), f"double-booked people {sorted(set(doubled))}")
            )
    for e in inst.edges:
        r = recurrence_time(sched, e)
        if r is None:
            out.append(Violation("missed", None, (e.index,), "edge never scheduled"))
        elif r > inst.freq[e.index]:
            out.append(
                Violation(
                    "recurrence", None, (e.index,), f"recurrence {r} exceeds frequency {inst.freq[e.index]}"
                )
            )
    return out


def personal_growth(inst: OpsInstance) -> dict[int, Fraction]:
    """Sum of incident growth rates for every person."""
    acc = {p.id: Fraction(0) for p in inst.people}
    for e in inst.edges:
        acc[e.u] += inst.growth[e.index]
        acc[e.v] += inst.growth[e.index]
    return acc


def gstar(inst: OpsInstance) -> Fraction:
    """Maximum personal growth rate; a lower bound on any schedule's heat.

    No person can meet twice a day, so the desire accumulating around
    the busiest person caps how well any schedule can do.
    """
    if not inst.edges:
        raise InstanceError("gstar undefined for an empty edge set")
    return max(personal_growth(inst).values())


def normalize(inst: OpsInstance) -> tuple[OpsInstance, Fraction]:
    """Scale growth rates so the maximum personal growth rate is 1.

    Returns the normalised instance and the exact divisor, so dividing
    then multiplying round-trips exactly.
    """
    scale = gstar(inst)
    if scale == 1:
        return inst, Fraction(1)
    scaled = OpsInstance(inst.people, inst.edges, tuple(g / scale for g in inst.growth))
    return scaled, scale


def local_density(inst: DpsInstance) -> tuple[dict[int, Fraction], Fraction]:
    """Per-person sum of ``1/f(e)`` over incident edges, plus the maximum.

    This is the density of the star of demands around each person; it is
    the quantity the greedy power-of-two scheduler's 1/2 hypothesis and
    the 1/4 scheduling threshold are stated in.
    """
    acc = {p.id: Fraction(0) for p in inst.people}
    for e in inst.edges:
        share = Fraction(1, inst.freq[e.index])
        acc[e.u] += share
        acc[e.v] += share
    peak = max(acc.values()) if acc else Fraction(0)
    return acc, peak


def max_degree(inst: OpsInstance | DpsInstance) -> int:
    deg = [0] * len(inst.people)
    for e in inst.edges:
        deg[e.u] += 1
        deg[e.v] += 1
    return max(deg, default=0)


def connected_components(inst: OpsInstance | DpsInstance) -> list[list[int]]:
    """Edge-index lists of the connected components (isolated people skipped)."""
    parent = list(range(len(inst.people)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in inst.edges:
        ra, rb = find(e.u), find(e.v)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for e in inst.edges:
        groups.setdefault(find(e.u), []).append(e.index)
    return [sorted(v) for _, v in sorted(groups.items())]
