"""Exact-rational two-phase simplex for small linear programs.

All tableau entries are :class:`fractions.Fraction`, so the reported
optimum is exact and can participate in strict comparisons.  Bland's
pivoting rule guarantees termination.  Problem sizes here are tiny
(variables: edges plus one, rows: maximal matchings), so no effort is
spent on sparsity or revised-form bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import PolyschedError

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LpError(PolyschedError):
    """Infeasible or unbounded program (neither occurs for density LPs)."""


def linprog_exact(
    c: Sequence[Fraction],
    a_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    a_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
) -> tuple[Fraction, list[Fraction]]:
    """Minimise ``c @ x`` subject to ``a_ub @ x <= b_ub``, ``a_eq @ x = b_eq``, ``x >= 0``.

    Returns the optimal value and one optimal vertex.
    """
    n = len(c)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    kinds: list[str] = []  # "le" | "ge" | "eq" after sign normalisation
    for a, b in zip(a_ub, b_ub):
        a = [Fraction(x) for x in a]
        b = Fraction(b)
        if b < 0:
            rows.append([-x for x in a])
            rhs.append(-b)
            kinds.append("ge")
        else:
            rows.append(a)
            rhs.append(b)
            kinds.append("le")
    for a, b in zip(a_eq, b_eq):
        a = [Fraction(x) for x in a]
        b = Fraction(b)
        if b < 0:
            a, b = [-x for x in a], -b
        rows.append(a)
        rhs.append(b)
        kinds.append("eq")

    m = len(rows)
    n_slack = sum(1 for k in kinds if k != "eq")
    # column layout: structural | slack/surplus | artificial
    slack_at: dict[int, int] = {}
    art_at: dict[int, int] = {}
    si = 0
    for i, k in enumerate(kinds):
        if k != "eq":
            slack_at[i] = n + si
            si += 1
    ai = 0
    for i, k in enumerate(kinds):
        if k != "le":
            art_at[i] = n + n_slack + ai
            ai += 1
    n_art = ai
    width = n + n_slack + n_art

    tab = [[_ZERO] * width + [rhs[i]] for i in range(m)]
    basis = [-1] * m
    for i in range(m):
        for j, x in enumerate(rows[i]):
            tab[i][j] = x
        k = kinds[i]
        if k == "le":
            tab[i][slack_at[i]] = _ONE
            basis[i] = slack_at[i]
        elif k == "ge":
            tab[i][slack_at[i]] = -_ONE
            tab[i][art_at[i]] = _ONE
            basis[i] = art_at[i]
        else:
            tab[i][art_at[i]] = _ONE
            basis[i] = art_at[i]

    def pivot(rows_: list[list[Fraction]], obj: list[Fraction], r: int, col: int) -> None:
        piv = rows_[r][col]
        rows_[r] = [x / piv for x in rows_[r]]
        for i in range(len(rows_)):
            if i != r and rows_[i][col] != 0:
                f = rows_[i][col]
                rows_[i] = [a - f * b for a, b in zip(rows_[i], rows_[r])]
        if obj[col] != 0:
            f = obj[col]
            for j in range(len(obj)):
                obj[j] -= f * rows_[r][j]
        basis[r] = col

    def solve_phase(obj: list[Fraction], allowed: int) -> None:
        # Bland's rule: lowest-index entering column, lowest-index basic
        # variable among the minimum-ratio rows.
        while True:
            col = -1
            for j in range(allowed):
                if obj[j] < 0:
                    col = j
                    break
            if col < 0:
                return
            best_r = -1
            best_ratio: Fraction | None = None
            for i in range(m):
                if tab[i][col] > 0:
                    ratio = tab[i][-1] / tab[i][col]
                    if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[i] < basis[best_r]
                    ):
                        best_ratio = ratio
                        best_r = i
            if best_r < 0:
                raise LpError("unbounded linear program")
            pivot(tab, obj, best_r, col)

    if n_art:
        # phase 1: minimise the sum of artificials
        obj1 = [_ZERO] * width + [_ZERO]
        for i in range(m):
            if basis[i] >= n + n_slack:
                obj1 = [a - b for a, b in zip(obj1, tab[i])]
        solve_phase(obj1, width)
        if -obj1[-1] != 0:
            raise LpError("infeasible linear program")
        # drive leftover artificials out of the basis where possible
        for i in range(m):
            if basis[i] >= n + n_slack:
                for j in range(n + n_slack):
                    if tab[i][j] != 0:
                        pivot(tab, obj1, i, j)
                        break

    obj2 = [Fraction(x) for x in c] + [_ZERO] * (width - n) + [_ZERO]
    for i in range(m):
        b = basis[i]
        if b < len(obj2) - 1 and obj2[b] != 0:
            f = obj2[b]
            obj2 = [a - f * t for a, t in zip(obj2, tab[i])]
    solve_phase(obj2, n + n_slack)

    x = [_ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), _ZERO)
    return value, x
