"""Bridges between the optimisation and decision problem flavours.

A target heat ``h`` turns an optimisation instance into a decision
instance by giving every edge the largest deadline that still forces
heat at most ``h``; conversely a decision instance becomes an
optimisation instance whose optimal heat is at most 1 exactly when the
decision instance is feasible.
"""

from __future__ import annotations

from fractions import Fraction

from .core import DpsInstance, OpsInstance, PreconditionError


def ops_to_dps(inst: OpsInstance, h: Fraction | int) -> DpsInstance:
    """Deadline instance for target heat ``h``: ``f(e) = floor(h / g(e))``.

    Any schedule feasible for the output has heat at most ``h`` on the
    input (``g(e) * r(e) <= g(e) * f(e) <= h``), and any schedule with
    heat above ``h`` violates some deadline.  ``floor`` is the unique
    maximal integer frequency with this property.

    Requires ``h >= max_e g(e)`` so that every frequency is >= 1.
    """
    h = Fraction(h)
    if inst.edges and h < max(inst.growth):
        raise PreconditionError("target heat unreachable in one day: h < max growth rate")
    freq = tuple(int(h / g) for g in inst.growth)
    return DpsInstance(inst.people, inst.edges, freq)


def dps_to_ops(inst: DpsInstance) -> OpsInstance:
    """Reciprocal instance: ``g(e) = 1 / f(e)``.

    A feasible schedule for the input keeps every ``g(e) * r(e) <= 1``,
    so the output has optimal heat at most 1; if the input is infeasible
    every schedule has some ``r(e) >= f(e) + 1``, putting the optimal
    heat at ``(F + 1) / F`` or above, where ``F`` is the largest
    frequency.
    """
    growth = tuple(Fraction(1, f) for f in inst.freq)
    return OpsInstance(inst.people, inst.edges, growth)
