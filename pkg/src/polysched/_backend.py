"""Kernel selection: compiled extension when importable, else pure Python.

``POLYSCHED_PURE=1`` forces the interpreted kernels (used by the parity
tests and the benchmark).  The compiled path additionally requires that
all integer products fit in 63 bits; callers check bounds via
:func:`fits_compiled` and fall back silently when they do not.
"""

from __future__ import annotations

import os
from array import array
from typing import Sequence

from . import _pykernels

_INT63 = 1 << 62

try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None


def compiled_available() -> bool:
    return _compiled is not None and os.environ.get("POLYSCHED_PURE") != "1"


def backend_name() -> str:
    return "cython" if compiled_available() else "pure"


def fits_compiled(gmax: int, xnum: int, xden: int, astar: int, horizon: int) -> bool:
    """All kernel intermediates must stay below 2**62."""
    return (
        gmax * (horizon + 1) * max(xden, 1) < _INT63
        and xnum * astar < _INT63
    )


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
    force_pure: bool = False,
):
    if (
        not force_pure
        and compiled_available()
        and fits_compiled(max(gnum), xnum, xden, astar, horizon)
    ):
        return _compiled.rf_simulate(
            n_people,
            array("q", eu),
            array("q", ev),
            array("q", gnum),
            array("q", order),
            xnum,
            xden,
            astar,
            horizon,
        )
    return _pykernels.rf_simulate(n_people, eu, ev, gnum, order, xnum, xden, astar, horizon)
