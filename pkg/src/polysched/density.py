"""Fractional density of matching-scheduling instances, computed exactly.

The density of an optimisation instance relaxes "one matching per day"
to a fractional mix of inclusion-maximal matchings of total measure 1;
the best achievable fractional heat lower-bounds the optimal heat of
the real problem.  By LP duality the same number is

    max over edge weightings z (z >= 0, sum z = 1) of
        min over maximal matchings M of  1 / sum_{e in M} z_e / g(e),

and the decision-instance variant replaces ``1/g(e)`` with ``f(e)``.
Both the primal and the dual are solved here by an exact rational
simplex and asserted to agree, so the reported value is the true
optimum, not an approximation.

The value is sandwiched between the maximum personal growth rate and
3/2 times it.  The upper bound comes from covering an integer-weighted
multigraph with at most 3/2 the maximum degree of matchings; only the
resulting bound is used here, never the covering itself.  The sandwich
is asserted non-strictly: the uniform triangle attains the upper bound
exactly under the dual formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .converters import dps_to_ops
from .core import DpsInstance, InstanceError, OpsInstance, RefusalError, gstar
from .simplex import linprog_exact

DEFAULT_MATCHING_GUARD = 20


@dataclass(frozen=True)
class MatchingSet:
    """All inclusion-maximal matchings of a graph, canonically ordered."""

    matchings: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Weighting:
    """Edge weights summing to one; a dual certificate for the density."""

    z: Mapping[int, Fraction]


@dataclass(frozen=True)
class FractionalSchedule:
    """Measure on maximal matchings with total at most one."""

    y: Mapping[tuple[int, ...], Fraction]


@dataclass(frozen=True)
class DensityReport:
    value: Fraction
    witness_z: Weighting
    witness_y: FractionalSchedule
    gstar: Fraction
    lower: Fraction
    upper: Fraction


def enumerate_maximal_matchings(
    inst: OpsInstance | DpsInstance, max_edges: int = DEFAULT_MATCHING_GUARD
) -> MatchingSet:
    """Complete list of inclusion-maximal matchings.

    The count can grow exponentially, so instances above ``max_edges``
    edges are refused; use the closed-form bounds instead at that size.
    """
    m = len(inst.edges)
    if m > max_edges:
        raise RefusalError(
            f"{m} edges exceeds the matching enumeration guard ({max_edges}); use bounds-only mode"
        )
    masks = [(1 << e.u) | (1 << e.v) for e in inst.edges]
    out: list[tuple[int, ...]] = []

    def extend(i: int, chosen: list[int], busy: int) -> None:
        if i == m:
            for j in range(m):
                if not masks[j] & busy:
                    return
            out.append(tuple(chosen))
            return
        extend(i + 1, chosen, busy)
        if not masks[i] & busy:
            chosen.append(i)
            extend(i + 1, chosen, busy | masks[i])
            chosen.pop()

    extend(0, [], 0)
    return MatchingSet(tuple(sorted(out)))


def _density_lp(
    inst: OpsInstance | DpsInstance,
    coeff: Sequence[Fraction],
    max_edges: int,
) -> DensityReport:
    """Solve both density LPs for per-edge load coefficients ``coeff``.

    Dual: minimise u subject to  sum_{e in M} coeff_e z_e <= u  for all
    maximal M, sum z = 1, z >= 0; the density is 1/u*.  Primal: maximise
    ell subject to  sum_M y_M <= 1  and  sum_{M owns e} y_M >= ell / coeff_e
    (the fractional schedule form after substituting ell for the
    reciprocal heat); the density is 1/ell*.  Strong duality makes the
    two coincide and is asserted exactly.
    """
    mm = enumerate_maximal_matchings(inst, max_edges=max_edges).matchings
    n = len(inst.edges)
    one = Fraction(1)

    # dual form: variables z_0..z_{n-1}, u
    a_ub = []
    for matching in mm:
        row = [Fraction(0)] * (n + 1)
        for e in matching:
            row[e] = coeff[e]
        row[n] = Fraction(-1)
        a_ub.append(row)
    a_eq = [[one] * n + [Fraction(0)]]
    c = [Fraction(0)] * n + [one]
    u_star, zx = linprog_exact(c, a_ub, [Fraction(0)] * len(mm), a_eq, [one])
    if u_star <= 0:
        raise InstanceError("degenerate density LP (no edges?)")

    # primal form: variables y_M for each maximal matching, then ell
    k = len(mm)
    a_ub2 = [[one] * k + [Fraction(0)]]
    b_ub2 = [one]
    for e in range(n):
        row = [Fraction(0)] * (k + 1)
        for j, matching in enumerate(mm):
            if e in matching:
                row[j] = Fraction(-1)
        row[k] = Fraction(1) / coeff[e]
        a_ub2.append(row)
        b_ub2.append(Fraction(0))
    c2 = [Fraction(0)] * k + [-one]
    neg_ell, yx = linprog_exact(c2, a_ub2, b_ub2)
    ell_star = -neg_ell

    if u_star != ell_star:
        raise AssertionError(f"strong duality violated: dual {u_star} != primal {ell_star}")

    value = Fraction(1) / u_star
    ops = inst if isinstance(inst, OpsInstance) else dps_to_ops(inst)
    gs = gstar(ops)
    report = DensityReport(
        value=value,
        witness_z=Weighting({e: zx[e] for e in range(n)}),
        witness_y=FractionalSchedule({mm[j]: yx[j] for j in range(k) if yx[j] != 0}),
        gstar=gs,
        lower=gs,
        upper=Fraction(3, 2) * gs,
    )
    if not (report.lower <= value <= report.upper):
        raise AssertionError(f"density {value} escapes sandwich [{report.lower}, {report.upper}]")
    return report


def poly_density_ops(inst: OpsInstance, max_edges: int = DEFAULT_MATCHING_GUARD) -> DensityReport:
    """Exact density of an optimisation instance (fractional heat bound)."""
    if not inst.edges:
        raise InstanceError("density undefined for an empty edge set")
    coeff = [Fraction(1) / g for g in inst.growth]
    return _density_lp(inst, coeff, max_edges)


def poly_density_dps(inst: DpsInstance, max_edges: int = DEFAULT_MATCHING_GUARD) -> DensityReport:
    """Exact density of a decision instance (feasibility index).

    Identical to the optimisation density of the reciprocal instance
    with ``g(e) = 1/f(e)``; values above 1 certify infeasibility.
    """
    if not inst.edges:
        raise InstanceError("density undefined for an empty edge set")
    coeff = [Fraction(f) for f in inst.freq]
    return _density_lp(inst, coeff, max_edges)


def density_bounds(inst: OpsInstance) -> tuple[Fraction, Fraction]:
    """Closed-form sandwich ``(G*, 3/2 G*)``; works at any instance size.

    With rational growth rates no epsilon slack is needed: scaling by the
    common denominator reduces to the integer-weight case.
    """
    gs = gstar(inst)
    return gs, Fraction(3, 2) * gs


def star_density(inst: DpsInstance) -> Fraction:
    """Density of a star instance: the harmonic sum of the frequencies.

    On a star every maximal matching is a single edge, so the LP closes
    to ``sum_e 1/f_e`` in closed form.  Non-star graphs are rejected.
    """
    if not inst.edges:
        raise InstanceError("density undefined for an empty edge set")
    if len(inst.edges) > 1:
        common = set(inst.edges[0].endpoints())
        for e in inst.edges[1:]:
            common &= set(e.endpoints())
        if not common:
            raise InstanceError("graph is not a star: no person is on every edge")
    return sum((Fraction(1, f) for f in inst.freq), Fraction(0))
