"""Instance generators and JSON file I/O.

Two adversarial families from the approximation analyses are built
exactly: the disjoint-star family separating disjoint-matching
schedulers from the optimum by a harmonic factor, and the uniform
complete graph whose tie order delays one unlucky edge as long as
possible under the threshold heuristic.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Any

from .core import (
    DpsInstance,
    InstanceError,
    OpsInstance,
    PolyschedError,
    Schedule,
    dps_instance,
    local_density,
    ops_instance,
    schedule,
)


class ParseError(PolyschedError):
    """Malformed instance or schedule file; message carries the location."""


# ---------------------------------------------------------------------------
# generators


def gen_disjoint_stars(d: int) -> OpsInstance:
    """``d`` disjoint stars; star ``i`` has ``i`` edges of growth ``1/i``.

    Every star can be trimmed round-robin for heat exactly 1, but any
    scheduler that commits to a fixed partition into disjoint matchings
    pays at least the harmonic sum ``1 + 1/2 + ... + 1/d``.
    """
    if d < 1:
        raise InstanceError("d must be >= 1")
    edges: list[tuple[int, int, Fraction]] = []
    next_person = 0
    for i in range(1, d + 1):
        center = next_person
        next_person += 1
        for _ in range(i):
            leaf = next_person
            next_person += 1
            edges.append((center, leaf, Fraction(1, i)))
    return ops_instance(next_person, edges)


def _circle_factorization(m: int) -> list[list[tuple[int, int]]]:
    """1-factorization of the complete graph on ``m`` vertices (m even).

    Circle method: vertex ``m - 1`` is fixed, the others rotate; round
    ``r`` pairs the fixed vertex with ``r`` and mirrors the rest.
    """
    rounds = []
    for r in range(m - 1):
        pairs = [(m - 1, r)]
        for i in range(1, m // 2):
            a = (r + i) % (m - 1)
            b = (r - i) % (m - 1)
            pairs.append((a, b))
        rounds.append([(min(a, b), max(a, b)) for a, b in pairs])
    return rounds


def gen_kn_adversarial(n: int) -> tuple[OpsInstance, tuple[int, ...]]:
    """Uniform complete graph ``K_n`` (odd ``n``) with an adversarial tie order.

    Growth is ``1/(n-1)`` on every edge, so the instance is normalised.
    The tie order lists a 1-factorization of ``K_{n-1}`` matching by
    matching and then the ``n-1`` edges at the excluded vertex; fed to
    the threshold heuristic this delays the last of those edges by
    ``2n - 3`` scheduling rounds.
    """
    if n < 3 or n % 2 == 0:
        raise InstanceError("n must be odd and >= 3")
    g = Fraction(1, n - 1)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if v < n]
    inst = ops_instance(n, [(u, v, g) for u, v in pairs])
    index_of = {(e.u, e.v): e.index for e in inst.edges}
    order: list[int] = []
    for matching in _circle_factorization(n - 1):
        for pair in matching:
            order.append(index_of[pair])
    for v in range(n - 1):
        order.append(index_of[(v, n - 1)])
    return inst, tuple(order)


def gen_random_ops(
    seed: int,
    n: int,
    edge_prob: float,
    weight_range: tuple[int, int] = (1, 9),
    normalized: bool = True,
) -> OpsInstance:
    """Seeded random optimisation instance with small integer weights.

    With ``normalized`` the weights are divided by the maximum personal
    weight, which keeps every growth rate an exact fraction over one
    small common denominator.
    """
    rng = random.Random(seed)
    lo, hi = weight_range
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.append((u, v, rng.randint(lo, hi)))
    if not edges:
        edges = [(0, 1, rng.randint(lo, hi))]
        n = max(n, 2)
    if not normalized:
        return ops_instance(n, [(u, v, Fraction(w)) for u, v, w in edges])
    loads = [0] * n
    for u, v, w in edges:
        loads[u] += w
        loads[v] += w
    wstar = max(loads)
    return ops_instance(n, [(u, v, Fraction(w, wstar)) for u, v, w in edges])


def gen_random_dps(
    seed: int,
    n: int,
    edge_prob: float,
    freq_choices: tuple[int, ...] = (2, 3, 4, 6, 8, 12),
    density_cap: Fraction | None = None,
    max_retries: int = 200,
) -> DpsInstance:
    """Seeded random decision instance, optionally rejected until every
    person's local density is at most ``density_cap``."""
    rng = random.Random(seed)
    for _ in range(max_retries):
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < edge_prob:
                    edges.append((u, v, rng.choice(freq_choices)))
        if not edges:
            edges = [(0, 1, rng.choice(freq_choices))]
        inst = dps_instance(max(n, 2), edges)
        if density_cap is None:
            return inst
        _, peak = local_density(inst)
        if peak <= density_cap:
            return inst
    raise InstanceError(f"could not reach local density cap {density_cap} in {max_retries} tries")


def gen_random_star_dps(seed: int, max_edges: int = 6, freq_range: tuple[int, int] = (2, 12)) -> DpsInstance:
    """Seeded random star-shaped decision instance."""
    rng = random.Random(seed)
    k = rng.randint(1, max_edges)
    lo, hi = freq_range
    return dps_instance(k + 1, [(0, i + 1, rng.randint(lo, hi)) for i in range(k)])


# ---------------------------------------------------------------------------
# JSON I/O
#
# Instance files: {"kind": "ops"|"dps", "people": [labels...],
#                  "edges": [{"u": int, "v": int, "g": "num/den"} | {"f": int}]}
# Schedule files: {"period": T, "days": [[edge_index, ...], ...]}
# Rationals travel as "num/den" strings.  Schemas are strict: unknown
# fields are rejected so silent typos cannot change an experiment.


def frac_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def str_to_frac(s: str, where: str) -> Fraction:
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: bad rational {s!r}") from exc


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise ParseError(f"{where}: unknown field(s) {sorted(extra)}")
    missing = required - set(obj)
    if missing:
        raise ParseError(f"{where}: missing field(s) {sorted(missing)}")


def instance_to_json(inst: OpsInstance | DpsInstance) -> dict[str, Any]:
    is_ops = isinstance(inst, OpsInstance)
    edges = []
    for e in inst.edges:
        rec: dict[str, Any] = {"u": e.u, "v": e.v}
        if is_ops:
            rec["g"] = frac_to_str(inst.growth[e.index])
        else:
            rec["f"] = inst.freq[e.index]
        edges.append(rec)
    return {
        "kind": "ops" if is_ops else "dps",
        "people": [p.label for p in inst.people],
        "edges": edges,
    }


def instance_from_json(doc: Any, where: str = "instance") -> OpsInstance | DpsInstance:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    _require_keys(doc, {"kind", "people", "edges"}, {"kind", "people", "edges"}, where)
    kind = doc["kind"]
    if kind not in ("ops", "dps"):
        raise ParseError(f"{where}.kind: expected 'ops' or 'dps', got {kind!r}")
    people = doc["people"]
    if not isinstance(people, list):
        raise ParseError(f"{where}.people: expected a list of labels")
    triples = []
    for i, rec in enumerate(doc["edges"]):
        loc = f"{where}.edges[{i}]"
        if not isinstance(rec, dict):
            raise ParseError(f"{loc}: expected an object")
        if kind == "ops":
            _require_keys(rec, {"u", "v", "g"}, {"u", "v", "g"}, loc)
            w: Any = str_to_frac(rec["g"], loc + ".g")
        else:
            _require_keys(rec, {"u", "v", "f"}, {"u", "v", "f"}, loc)
            w = rec["f"]
            if not isinstance(w, int):
                raise ParseError(f"{loc}.f: expected an integer")
        if not isinstance(rec["u"], int) or not isinstance(rec["v"], int):
            raise ParseError(f"{loc}: endpoints must be integers")
        triples.append((rec["u"], rec["v"], w))
    try:
        if kind == "ops":
            return ops_instance(people, triples)
        return dps_instance(people, triples)
    except InstanceError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def schedule_to_json(sched: Schedule) -> dict[str, Any]:
    return {"period": sched.period, "days": [sorted(d) for d in sched.days]}


def schedule_from_json(doc: Any, where: str = "schedule") -> Schedule:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    _require_keys(doc, {"period", "days"}, {"period", "days"}, where)
    days = doc["days"]
    if not isinstance(days, list) or doc["period"] != len(days):
        raise ParseError(f"{where}: period must equal the number of days")
    for i, day in enumerate(days):
        if not isinstance(day, list) or not all(isinstance(x, int) for x in day):
            raise ParseError(f"{where}.days[{i}]: expected a list of edge indices")
    return schedule(days)


def write_instance(path: str, inst: OpsInstance | DpsInstance) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_json(inst), fh, indent=2)
        fh.write("\n")


def read_instance(path: str) -> OpsInstance | DpsInstance:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return instance_from_json(doc, where=path)


def write_schedule(path: str, sched: Schedule) -> None:
    with open(path, "w") as fh:
        json.dump(schedule_to_json(sched), fh, indent=2)
        fh.write("\n")


def read_schedule(path: str) -> Schedule:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return schedule_from_json(doc, where=path)
