"""Backend selection for the trajectory walker.

The Cython extension ``_ckernel`` is used when it was built and
``PERMSEQ_PURE_PYTHON`` is not set; otherwise ``_pykernel`` runs.  Results
are identical: int64 overflow in the compiled walker triggers a transparent
re-run in Python integers.
"""

from __future__ import annotations

import os
from array import array
from functools import lru_cache
from typing import NamedTuple

from . import _pykernel
from ._pykernel import CYCLE, ESCAPED, OVERFLOW, STEP_LIMIT

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

HAVE_COMPILED = _ckernel is not None
BACKEND = "cython" if HAVE_COMPILED and not os.environ.get("PERMSEQ_PURE_PYTHON") else "python"

INT64_MAX = (1 << 63) - 1
NO_FLOOR = -1

__all__ = ["CYCLE", "ESCAPED", "STEP_LIMIT", "BACKEND", "HAVE_COMPILED", "Walk", "walk", "new_owner"]


class Walk(NamedTuple):
    status: int
    steps: int
    maxima: int
    min_seen: int
    max_seen: int
    last: int
    hits: list


def new_owner(size: int) -> array:
    """Zeroed int32 buffer usable by both walkers."""
    return array("i", bytes(4 * size))


@lru_cache(maxsize=512)
def _tables(perm, inverse):
    return perm.kernel_tables(inverse)


def walk(perm, x0, threshold, m_floor=None, step_limit=10**7, owner=None, label=0,
         inverse=False, backend=None) -> Walk:
    """Walk the orbit of ``x0`` under ``perm`` (or its inverse).

    ``m_floor=None`` disables the local-maxima requirement for escape.  An
    orbit passing ``threshold**2`` counts as escaped whatever its maxima.
    """
    backend = backend or BACKEND
    floor = NO_FLOOR if m_floor is None else int(m_floor)
    tables = _tables(perm, inverse) if hasattr(perm, "kernel_tables") else None
    if tables is None:
        step = perm.apply_inv if inverse else perm.apply
        return Walk(*_pykernel.walk_callable(step, x0, threshold, floor, step_limit, owner, label))
    m, mult, offs, qmax = tables
    if backend == "cython" and _ckernel is not None and x0 <= INT64_MAX:
        res = _ckernel.walk_table(m, mult, offs, qmax, x0, min(threshold, INT64_MAX),
                                  floor, step_limit, owner, label, min(int(threshold) ** 2, INT64_MAX))
        if res[0] != OVERFLOW:
            return Walk(*res)
    return Walk(*_pykernel.walk_table(m, mult, offs, qmax, x0, threshold, floor, step_limit, owner, label))


def orbit(perm, x0, length, inverse=False) -> list[int]:
    step = perm.apply_inv if inverse else perm.apply
    out = [x0]
    x = x0
    for _ in range(length - 1):
        x = step(x)
        out.append(x)
    return out
