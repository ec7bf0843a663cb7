"""Integer Smith normal form used for Grassmann homology.

The elimination kernel comes from the compiled ``_smith_ext`` module when it
is importable and ``GRASSPOLY_PURE_PYTHON`` is unset; otherwise the
pure-Python kernel is used.  Both produce the same diagonal.
"""

from __future__ import annotations

import os

from . import _smith_py

try:
    if os.environ.get("GRASSPOLY_PURE_PYTHON"):
        raise ImportError("compiled kernel disabled by environment")
    from . import _smith_ext
except ImportError:
    _smith_ext = None

BACKEND = "cython" if _smith_ext is not None else "python"


def smith_diagonal(rows, backend: str | None = None) -> list[int]:
    backend = backend or BACKEND
    if not rows or not len(rows[0]):
        return []
    if backend == "cython":
        if _smith_ext is None:
            raise RuntimeError("compiled kernel is not available")
        try:
            return _smith_ext.smith_diagonal(rows)
        except OverflowError:
            pass
    return _smith_py.smith_diagonal(rows)


def smith_invariants(rows, backend: str | None = None) -> list[int]:
    """Invariant factors (nonzero, each dividing the next) of an integer matrix."""
    return _smith_py.invariant_factors(smith_diagonal(rows, backend))
