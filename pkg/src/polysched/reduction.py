"""Compiler from 3-CNF formulas to bipartite decision polycules.

The target polycule is schedulable iff the formula is satisfiable.  Days
carry a four-color rhythm (red/blue every 3 days, green/purple every 6)
anchored by a clock node whose four relationships admit exactly one
local schedule shape.  Gadgets communicate truth values through the
slots their shared edges occupy:

* variable nodes choose red or blue for their two frequency-3 edges,
  encoding True/False;
* duplicator trees copy a frequency-3 signal through frequency-9 relays
  (one copy per consumer), and 6-duplicator cores copy green/purple
  constants through frequency-12 relays;
* flipper nodes move a constant across the bipartition, exchanging red
  with blue and green with purple;
* one OR gadget per clause can place its frequency-12 output edge in
  blue slots iff at least one of its three inputs sits in red slots;
* tension nodes absorb four OR outputs each and admit a local schedule
  only when all of them are blue.

Every node is sexed male or female and every edge joins opposite sexes,
so the polycule is bipartite by construction.  All frequencies are in
{3, 6, 9, 12}; witness schedules live on a 36-day period.

Constant-edge routing is deterministic first-fit in gadget-creation
order; surplus constants and duplicator tails end at degree-1 pendant
nodes of the opposite sex.  The node count stays within
``NODE_BUDGET_PER_SYMBOL * (variables + clauses) + NODE_BUDGET_BASE``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import (
    DpsInstance,
    PolyschedError,
    PreconditionError,
    Schedule,
    dps_instance,
    local_density,
    validate_dps,
)
from .oracle import SlotColor, slot_color

MALE = "male"
FEMALE = "female"

RED = SlotColor.RED
BLUE = SlotColor.BLUE
GREEN = SlotColor.GREEN
PURPLE = SlotColor.PURPLE

WITNESS_PERIOD = 36  # lcm of all gadget frequencies 3, 6, 9, 12

NODE_BUDGET_PER_SYMBOL = 80
NODE_BUDGET_BASE = 24


class CnfError(PolyschedError):
    """Malformed formula or DIMACS text; message carries the line."""


# ---------------------------------------------------------------------------
# formulas

Literal = tuple[int, bool]  # (variable index, negated)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self) -> None:
        for ci, clause in enumerate(self.clauses):
            if not 1 <= len(clause) <= 3:
                raise CnfError(f"clause {ci} must have 1-3 literals")
            for var, neg in clause:
                if not 0 <= var < self.num_vars:
                    raise CnfError(f"clause {ci} references undefined variable {var}")
                if not isinstance(neg, bool):
                    raise CnfError(f"clause {ci}: negation flag must be boolean")

    def satisfied_by(self, values: Sequence[bool]) -> bool:
        return all(any(values[v] != neg for v, neg in cl) for cl in self.clauses)


@dataclass(frozen=True)
class Assignment:
    values: tuple[bool, ...]


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF; clauses may span lines, at most 3 literals each."""
    num_vars = None
    num_clauses = None
    clauses: list[tuple[Literal, ...]] = []
    current: list[Literal] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"line {lineno}: bad problem line {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise CnfError(f"line {lineno}: bad problem line {line!r}") from exc
            continue
        if num_vars is None:
            raise CnfError(f"line {lineno}: clause before the problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError as exc:
                raise CnfError(f"line {lineno}: bad literal {tok!r}") from exc
            if lit == 0:
                if not current:
                    raise CnfError(f"line {lineno}: empty clause")
                clauses.append(tuple(current))
                current = []
                continue
            var = abs(lit) - 1
            if var >= num_vars:
                raise CnfError(f"line {lineno}: variable {abs(lit)} exceeds declared count {num_vars}")
            current.append((var, lit < 0))
            if len(current) > 3:
                raise CnfError(f"line {lineno}: clause has more than 3 literals")
    if current:
        raise CnfError("last clause not terminated by 0")
    if num_vars is None:
        raise CnfError("missing problem line")
    if num_clauses is not None and num_clauses != len(clauses):
        raise CnfError(f"problem line declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def exhaustive_satisfying_assignment(phi: CnfFormula) -> Assignment | None:
    """Brute-force satisfying assignment; intended for small formulas."""
    for bits in range(1 << phi.num_vars):
        values = tuple(bool(bits >> i & 1) for i in range(phi.num_vars))
        if phi.satisfied_by(values):
            return Assignment(values)
    return None


# ---------------------------------------------------------------------------
# gadget graph

ExpectedColor = SlotColor | frozenset  # single pinned color or a set of options

FREE_RB = frozenset({RED, BLUE})
FREE_BGP = frozenset({BLUE, GREEN, PURPLE})

_TENSION_PHASES = (1, 4, 7, 10)  # blue residues mod 12


@dataclass
class _OrMeta:
    clause: int
    inputs: tuple[Literal | None, ...]  # None marks a constant-blue fill input
    inv_out_edges: tuple[int, int, int]
    blue_six_edge: int
    out_edge: int = -1
    out_phase: int = -1


@dataclass
class GadgetGraph:
    """Compiled polycule plus metadata for checking and scheduling it."""

    dps: DpsInstance
    sex: tuple[str, ...]
    gadget_of: tuple[str, ...]
    expected_color: Mapping[int, ExpectedColor]
    formula: CnfFormula
    plans: Mapping[int, tuple] = field(repr=False, default_factory=dict)
    or_metas: tuple[_OrMeta, ...] = field(repr=False, default_factory=tuple)


@dataclass(frozen=True)
class StructureCheck:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class StructureReport:
    checks: tuple[StructureCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


# ---------------------------------------------------------------------------
# builder

_CONST_COLOR = {"R3": RED, "B3": BLUE, "G6": GREEN, "P6": PURPLE}
_CONST_FREQ = {"R3": 3, "B3": 3, "G6": 6, "P6": 6}


class _PoolEntry:
    __slots__ = ("producer", "freq", "expected", "plan")

    def __init__(self, producer: int, freq: int, expected: ExpectedColor, plan: tuple):
        self.producer = producer
        self.freq = freq
        self.expected = expected
        self.plan = plan


def _opp(sex: str) -> str:
    return FEMALE if sex == MALE else MALE


class _Builder:
    def __init__(self, phi: CnfFormula) -> None:
        self.phi = phi
        self.tags: list[str] = []
        self.sexes: list[str] = []
        self.triples: list[tuple[int, int, int]] = []
        self.expected: dict[int, ExpectedColor] = {}
        self.plans: dict[int, tuple] = {}
        self.adjacent: set[frozenset[int]] = set()
        self.pools: dict[tuple, deque[_PoolEntry]] = {}
        self.or_metas: list[_OrMeta] = []
        self.or_queue: deque[tuple[int, int]] = deque()  # (or node, clause)

    # -- primitives

    def node(self, tag: str, sex: str) -> int:
        self.tags.append(tag)
        self.sexes.append(sex)
        return len(self.tags) - 1

    def edge(self, a: int, b: int, freq: int, expected: ExpectedColor, plan: tuple) -> int:
        if self.sexes[a] == self.sexes[b]:
            raise AssertionError(f"edge {a}-{b} joins two {self.sexes[a]} nodes")
        pair = frozenset((a, b))
        if pair in self.adjacent:
            raise AssertionError(f"parallel edge {a}-{b}")
        self.adjacent.add(pair)
        idx = len(self.triples)
        self.triples.append((min(a, b), max(a, b), freq))
        self.expected[idx] = expected
        self.plans[idx] = plan
        return idx

    def produce(self, key: tuple, producer: int, freq: int, expected: ExpectedColor, plan: tuple) -> None:
        self.pools.setdefault(key, deque()).append(_PoolEntry(producer, freq, expected, plan))

    def produce_const(self, kind: str, producer: int) -> None:
        color = _CONST_COLOR[kind]
        key = (kind, self.sexes[producer])
        self.produce(key, producer, _CONST_FREQ[kind], color, ("const", color))

    def draw(self, key: tuple, consumer: int) -> int:
        for _ in range(2):
            pool = self.pools.get(key)
            if not pool:
                raise AssertionError(f"pool {key} empty; production plan out of balance")
            for i, entry in enumerate(pool):
                if frozenset((entry.producer, consumer)) not in self.adjacent:
                    del pool[i]
                    return self.edge(entry.producer, consumer, entry.freq, entry.expected, entry.plan)
            if key[0] in ("G6", "P6") and key[1] == MALE:
                # every pooled producer already borders the consumer (a
                # duplicator child next to its own parent's output); send
                # the oldest entry through a flipper pair to mint the
                # same constant from a fresh producer
                self._flipper6(FEMALE, key[0], "P6" if key[0] == "G6" else "G6")
                self._flipper6(MALE, "P6" if key[0] == "G6" else "G6", key[0])
                continue
            break
        raise AssertionError(f"pool {key} has only producers adjacent to node {consumer}")

    def draw_const(self, kind: str, producer_sex: str, consumer: int) -> int:
        return self.draw((kind, producer_sex), consumer)

    def _pendant_pair_three(self, owner: int) -> None:
        # a 6-flipper's own 3-edges may land red/blue in either order;
        # the witness fixes red-then-blue
        for color in (RED, BLUE):
            pend = self.node("pendant", _opp(self.sexes[owner]))
            self.edge(owner, pend, 3, FREE_RB, ("const", color))

    def _flipper6(self, sex: str, in_kind: str, out_kind: str) -> None:
        """Frequency-[3,3,6,6] flipper: consume a 6-constant produced by
        the opposite sex, release the opposite 6-color as this sex."""
        f6 = self.node("f6", sex)
        self.draw_const(in_kind, _opp(sex), f6)
        self.produce_const(out_kind, f6)
        self._pendant_pair_three(f6)

    # -- layer 1: clock and variables

    def build_clock_and_variables(self) -> None:
        t = self.node("true_clock", MALE)
        self.produce_const("R3", t)
        self.produce_const("B3", t)
        self.produce_const("P6", t)
        prev = t  # male producer of the green 6-edge continuing the chain
        for i in range(self.phi.num_vars):
            f6 = self.node("f6", FEMALE)
            self.edge(prev, f6, 6, GREEN, ("const", GREEN))
            self._pendant_pair_three(f6)
            x = self.node(f"var:{i}", MALE)
            self.edge(f6, x, 6, PURPLE, ("const", PURPLE))
            self.produce(("lit", i, False, MALE), x, 3, FREE_RB, ("lit", i, False))
            self.produce(("lit", i, True, MALE), x, 3, FREE_RB, ("lit", i, True))
            prev = x
        self.produce_const("G6", prev)

    # -- duplicator trees for frequency-3 signals

    def _thread_six(self, d3_node: int) -> None:
        """Green/purple threading of one duplicator node.

        A female node consumes a male green 6 and releases purple into a
        male flipper that regreens it; a male node takes purple from a
        female flipper fed green, and releases green itself.  Net effect
        per node: one male green constant borrowed and returned.
        """
        if self.sexes[d3_node] == FEMALE:
            self.draw_const("G6", MALE, d3_node)
            f6 = self.node("f6", MALE)
            self.edge(d3_node, f6, 6, PURPLE, ("const", PURPLE))
            self.produce_const("G6", f6)
            self._pendant_pair_three(f6)
        else:
            f6 = self.node("f6", FEMALE)
            self.draw_const("G6", MALE, f6)
            self._pendant_pair_three(f6)
            self.edge(f6, d3_node, 6, PURPLE, ("const", PURPLE))
            self.produce_const("G6", d3_node)

    def build_d3_tree(
        self, input_key: tuple, copy_key_base: tuple, ref: tuple, quota: dict[str, int]
    ) -> None:
        """Copy one frequency-3 signal into ``quota`` copies per sex.

        The root consumes the signal and fans out three frequency-9
        relays with distinct phases; every further node consumes one
        relay, emits one copy (of its own sex) and two relays of the
        complementary phases toward the opposite sex.  The copy carries
        the input's slot color, the relays its complement.  Unused
        relays end at pendants.
        """
        if quota.get(MALE, 0) <= 0 and quota.get(FEMALE, 0) <= 0:
            return
        anti: ExpectedColor = FREE_RB if ref[0] == "lit" else (BLUE if ref[1] == RED else RED)
        copy_expected: ExpectedColor = FREE_RB if ref[0] == "lit" else ref[1]
        root = self.node("d3", FEMALE)
        self.draw(input_key, root)
        self._thread_six(root)
        need = {MALE: quota.get(MALE, 0), FEMALE: quota.get(FEMALE, 0)}
        frontier: deque[tuple[int, int]] = deque((root, k) for k in range(3))
        while need[MALE] > 0 or need[FEMALE] > 0:
            picked = None
            for i, (parent, _k) in enumerate(frontier):
                if need[_opp(self.sexes[parent])] > 0:
                    picked = i
                    break
            if picked is None:
                picked = 0  # grow one level toward the sex still needed
            parent, k = frontier[picked]
            del frontier[picked]
            child_sex = _opp(self.sexes[parent])
            child = self.node("d3", child_sex)
            self.edge(parent, child, 9, anti, ("nine", ref, k))
            self._thread_six(child)
            self.produce(copy_key_base + (child_sex,), child, 3, copy_expected, ref)
            if need[child_sex] > 0:
                need[child_sex] -= 1
            for kk in range(3):
                if kk != k:
                    frontier.append((child, kk))
        for parent, k in frontier:
            pend = self.node("pendant", _opp(self.sexes[parent]))
            self.edge(parent, pend, 9, anti, ("nine", ref, k))

    # -- 6-duplicator cores

    def build_d6_units(self, kind: str, count: int) -> None:
        """``count`` duplicator cores for purple (kind "P") or green
        (kind "G") constants.

        A core is one female node fanning two frequency-12 relays to two
        male nodes that each release one male constant of the duplicated
        color.  The female node's red by-product feeds a frequency-3
        flipper whose blue and 6-color outputs return to the pools; one
        6-flipper per core (bar the last) keeps the flipper chain fed
        across the bipartition.
        """
        if count <= 0:
            return
        if kind == "P":
            dup, other = "P6", "G6"
            relay_color, relay_phases = GREEN, (2, 8)
        else:
            dup, other = "G6", "P6"
            relay_color, relay_phases = PURPLE, (5, 11)
        # bootstrap: a female 6-flipper turns one male constant of the
        # other color into the female-produced duplicated color that the
        # first frequency-3 flipper consumes
        self._flipper6(FEMALE, other, dup)
        for unit in range(count):
            a = self.node("d6", FEMALE)
            self.draw_const(dup, MALE, a)  # seed
            self.draw_const("B3", MALE, a)
            f3a = self.node("f3", MALE)
            self.edge(a, f3a, 3, RED, ("const", RED))
            self.draw_const(dup, FEMALE, f3a)
            self.produce_const("B3", f3a)
            self.produce_const(other, f3a)
            for relay_idx, phase in enumerate(relay_phases):
                bnode = self.node("d6", MALE)
                self.edge(a, bnode, 12, relay_color, ("twelve", phase))
                self.draw_const("R3", FEMALE, bnode)
                self.produce_const("B3", bnode)
                self.produce_const(dup, bnode)
                pend = self.node("pendant", FEMALE)
                self.edge(bnode, pend, 12, relay_color, ("twelve", relay_phases[1 - relay_idx]))
            if unit + 1 < count:
                self._flipper6(FEMALE, other, dup)

    # -- clause and tension layers

    def build_or(self, j: int) -> None:
        clause = self.phi.clauses[j]
        or_node = self.node(f"or:{j}", MALE)
        self.draw_const("R3", FEMALE, or_node)
        inputs: list[Literal | None] = []
        inv_edges: list[int] = []
        for pos in range(3):
            inv = self.node("inverter", FEMALE)
            if pos < len(clause):
                var, neg = clause[pos]
                self.draw(("lit", var, neg, MALE), inv)
                inputs.append((var, neg))
            else:
                self.draw_const("B3", MALE, inv)
                inputs.append(None)
            inv_edges.append(self.edge(inv, or_node, 12, FREE_BGP, ("or12", j, pos)))
        fill1 = self.node("fill", FEMALE)
        self.edge(or_node, fill1, 6, GREEN, ("const", GREEN))
        fill2 = self.node("fill", FEMALE)
        blue_six = self.edge(or_node, fill2, 6, BLUE, ("or6blue", j))
        self.or_metas.append(
            _OrMeta(j, tuple(inputs), (inv_edges[0], inv_edges[1], inv_edges[2]), blue_six)
        )
        self.or_queue.append((or_node, j))

    def build_tensions(self, count: int) -> None:
        for _ in range(count):
            te = self.node("tension", FEMALE)
            self.draw_const("R3", MALE, te)
            self.draw_const("G6", MALE, te)
            self.draw_const("P6", MALE, te)
            for phase in _TENSION_PHASES:
                if self.or_queue:
                    or_node, j = self.or_queue.popleft()
                    idx = self.edge(or_node, te, 12, BLUE, ("twelve", phase))
                    self.or_metas[j].out_edge = idx
                    self.or_metas[j].out_phase = phase
                else:
                    pend = self.node("pendant", MALE)
                    self.edge(te, pend, 12, BLUE, ("twelve", phase))

    def finalize_pendants(self) -> None:
        for key in sorted(self.pools, key=repr):
            pool = self.pools[key]
            while pool:
                entry = pool.popleft()
                pend = self.node("pendant", _opp(self.sexes[entry.producer]))
                self.edge(entry.producer, pend, entry.freq, entry.expected, entry.plan)

    # -- top level

    def build(self) -> GadgetGraph:
        phi = self.phi
        m = len(phi.clauses)
        tensions = -(-m // 4) if m else 0
        d6_each = max(0, tensions - 1)
        fills = sum(3 - len(cl) for cl in phi.clauses)

        self.build_clock_and_variables()

        occurrences: dict[tuple[int, bool], int] = {}
        for cl in phi.clauses:
            for var, neg in cl:
                occurrences[(var, neg)] = occurrences.get((var, neg), 0) + 1
        for i in range(phi.num_vars):
            for neg in (False, True):
                k = occurrences.get((i, neg), 0)
                self.build_d3_tree(
                    ("lit", i, neg, MALE), ("lit", i, neg), ("lit", i, neg), {MALE: k}
                )
        if m:
            self.build_d3_tree(
                ("R3", MALE),
                ("R3",),
                ("const", RED),
                {MALE: tensions, FEMALE: m + 4 * d6_each},
            )
        # blue demand: OR fills plus one per 6-duplicator core (two core
        # batches, one green and one purple, of d6_each units each)
        b3_demand = fills + 2 * d6_each
        if b3_demand:
            self.build_d3_tree(("B3", MALE), ("B3",), ("const", BLUE), {MALE: b3_demand})

        self.build_d6_units("G", d6_each)
        self.build_d6_units("P", d6_each)
        for j in range(m):
            self.build_or(j)
        self.build_tensions(tensions)
        if self.or_queue:
            raise AssertionError("tension layer left OR outputs unconsumed")
        self.finalize_pendants()

        inst = dps_instance(list(self.tags), self.triples)
        return GadgetGraph(
            dps=inst,
            sex=tuple(self.sexes),
            gadget_of=tuple(self.tags),
            expected_color=dict(self.expected),
            formula=phi,
            plans=dict(self.plans),
            or_metas=tuple(self.or_metas),
        )


def build_polycule(phi: CnfFormula) -> GadgetGraph:
    """Compile a formula into its decision polycule.

    The result is bipartite, has maximum frequency 12 (6 when there are
    no clauses), local density at most 1 everywhere, and linear size.
    """
    return _Builder(phi).build()


# ---------------------------------------------------------------------------
# witness schedules


def _const_days(color: SlotColor, period: int) -> frozenset[int]:
    return frozenset(t for t in range(period) if slot_color(t) == color)


def _resolve_days(plan: tuple, values: Sequence[bool], or_ctx: dict[int, dict], period: int) -> frozenset[int]:
    kind = plan[0]
    if kind == "const":
        return _const_days(plan[1], period)
    if kind == "lit":
        _, var, neg = plan
        return _const_days(RED if values[var] != neg else BLUE, period)
    if kind == "nine":
        _, ref, k = plan
        if ref[0] == "lit":
            truth = values[ref[1]] != ref[2]
            base = 1 if truth else 0  # complement of the copy's color
        else:
            base = 1 if ref[1] == RED else 0
        phase = base + 3 * k
        return frozenset(t for t in range(period) if t % 9 == phase)
    if kind == "twelve":
        return frozenset(t for t in range(period) if t % 12 == plan[1])
    if kind == "or12":
        _, j, pos = plan
        return frozenset(t for t in range(period) if t % 12 == or_ctx[j]["inv_phase"][pos])
    if kind == "or6blue":
        _, j = plan
        psi = or_ctx[j]["blue_six_residue"]
        return frozenset(t for t in range(period) if t % 6 == psi)
    raise AssertionError(f"unknown plan {plan}")


def witness_schedule(g: GadgetGraph, assignment: Assignment) -> Schedule:
    """Build the 36-day schedule encoding a satisfying assignment.

    Raises :class:`PreconditionError` for non-satisfying assignments.
    The result passes :func:`validate_dps` and is slot-respecting with
    respect to ``g.expected_color``; both are asserted before returning.
    """
    values = assignment.values
    if len(values) != g.formula.num_vars:
        raise PreconditionError("assignment must cover every variable")
    if not g.formula.satisfied_by(values):
        raise PreconditionError("assignment does not satisfy the formula")

    or_ctx: dict[int, dict] = {}
    for meta in g.or_metas:
        truths = [inp is not None and values[inp[0]] != inp[1] for inp in meta.inputs]
        chosen = truths.index(True)  # satisfying assignment guarantees one
        purple = deque((5, 11))
        inv_phase = {}
        for pos in range(3):
            if pos == chosen:
                inv_phase[pos] = (meta.out_phase + 6) % 12
            else:
                inv_phase[pos] = purple.popleft()
        or_ctx[meta.clause] = {
            "inv_phase": inv_phase,
            # the blue 6-edge takes the pair of blue slots complementary
            # to {out_phase, out_phase + 6}
            "blue_six_residue": 4 if meta.out_phase % 6 == 1 else 1,
        }

    period = WITNESS_PERIOD
    days: list[set[int]] = [set() for _ in range(period)]
    for e in range(len(g.dps.edges)):
        for t in _resolve_days(g.plans[e], values, or_ctx, period):
            days[t].add(e)
    sched = Schedule(period, tuple(frozenset(d) for d in days))
    violations = validate_dps(sched, g.dps)
    if violations:
        raise AssertionError(f"witness schedule invalid: {violations[:3]}")
    bad = slot_violations(g, sched)
    if bad:
        raise AssertionError(f"witness schedule not slot-respecting: {bad[:3]}")
    return sched


def slot_violations(g: GadgetGraph, sched: Schedule) -> list[str]:
    """Edges scheduled outside their expected slot colors."""
    out = []
    for e, exp in g.expected_color.items():
        allowed = {exp} if isinstance(exp, SlotColor) else set(exp)
        for t in range(sched.period):
            if e in sched.days[t] and slot_color(t) not in allowed:
                out.append(f"edge {e} on day {t} ({slot_color(t).value}) not in {sorted(c.value for c in allowed)}")
    return out


# ---------------------------------------------------------------------------
# structure checks


def check_structure(g: GadgetGraph) -> StructureReport:
    """Structural health of a compiled polycule.

    Checks bipartiteness by sex, the maximum frequency (12 with clauses,
    6 without), per-person local density at most 1, pendant coverage
    (declared pendants have degree exactly 1, nothing dangles), and the
    linear size budget.
    """
    checks: list[StructureCheck] = []
    inst = g.dps

    bad_edges = [e.index for e in inst.edges if g.sex[e.u] == g.sex[e.v]]
    checks.append(
        StructureCheck("bipartite", not bad_edges, f"single-sex edges: {bad_edges[:5]}" if bad_edges else "ok")
    )

    maxf = max(inst.freq) if inst.freq else 0
    expected_max = 12 if g.formula.clauses else 6
    checks.append(
        StructureCheck(
            "max-frequency",
            maxf == expected_max,
            f"max frequency {maxf}, expected {expected_max}",
        )
    )

    dens, peak = local_density(inst)
    over = [p for p, dv in dens.items() if dv > 1]
    checks.append(
        StructureCheck("local-density", not over, f"people over density 1: {over[:5]}" if over else f"peak {peak}")
    )

    deg = [0] * len(inst.people)
    for e in inst.edges:
        deg[e.u] += 1
        deg[e.v] += 1
    bad_pendants = [
        i for i, tag in enumerate(g.gadget_of) if tag == "pendant" and deg[i] != 1
    ]
    isolated = [i for i, d in enumerate(deg) if d == 0]
    checks.append(
        StructureCheck(
            "pendant-coverage",
            not bad_pendants and not isolated,
            f"bad pendants {bad_pendants[:5]}, isolated {isolated[:5]}",
        )
    )

    budget = NODE_BUDGET_PER_SYMBOL * (g.formula.num_vars + len(g.formula.clauses)) + NODE_BUDGET_BASE
    checks.append(
        StructureCheck(
            "size-budget",
            len(inst.people) <= budget,
            f"{len(inst.people)} nodes vs budget {budget}",
        )
    )
    return StructureReport(tuple(checks))
