"""Pure-Python inner loops; the reference semantics for the compiled kernels.

Everything here works on integer numerators over one common denominator,
so results are exact and bit-for-bit reproducible.  The compiled module
``polysched._kernels`` implements the identical contract in C integers;
``polysched._backend`` picks whichever is available and safe.
"""

from __future__ import annotations

from typing import Sequence


def rf_simulate(
    n_people: int,
    eu: Sequence[int],
    ev: Sequence[int],
    gnum: Sequence[int],
    order: Sequence[int],
    xnum: int,
    xden: int,
    astar: int,
    horizon: int,
):
    """Threshold-matching simulation over ``horizon`` days.

    Day cycle: edges are selected in priority ``order`` by their morning
    heat (``gnum[e] * d[e]`` over the implicit common denominator, where
    ``d[e]`` counts full days since the last cut), growth happens during
    the day, and selected edges are cut at dusk, so the recorded cut
    heat is ``gnum[e] * (d[e] + 1)``.  Selection requires
    ``gnum[e] * d[e] * xden >= xnum * astar`` and both endpoints free.

    Returns ``(best, best_day, d_final, day_counts, flat_selection)``
    where ``best`` is the largest heat numerator ever experienced (cut
    heats and end-of-horizon heats) and ``best_day`` the growth day it
    occurred on.
    """
    m = len(gnum)
    d = [0] * m
    busy = [-1] * n_people
    sel = [0] * m
    best = -1
    best_day = -1
    thr = xnum * astar
    day_counts: list[int] = []
    flat: list[int] = []
    for t in range(horizon):
        nsel = 0
        for e in order:
            if gnum[e] * d[e] * xden >= thr:
                u = eu[e]
                v = ev[e]
                if busy[u] != t and busy[v] != t:
                    busy[u] = t
                    busy[v] = t
                    sel[nsel] = e
                    nsel += 1
        for k in range(nsel):
            e = sel[k]
            val = gnum[e] * (d[e] + 1)
            if val > best:
                best = val
                best_day = t
            d[e] = -1  # bumped to 0 by the growth pass below
        for e in range(m):
            d[e] += 1
        day_counts.append(nsel)
        flat.extend(sel[:nsel])
    for e in range(m):
        val = gnum[e] * d[e]
        if val > best:
            best = val
            best_day = horizon - 1
    return best, best_day, d, day_counts, flat
