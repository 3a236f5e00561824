"""JIT switch for the hot kernels.

Set ``HYPERCOUNT_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
The flag is read once, at import time.
"""

from __future__ import annotations

import os

_OFF = {"1", "true", "yes", "on"}

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("HYPERCOUNT_DISABLE_NUMBA", "").lower() not in _OFF


def jit(fn):
    """``numba.njit`` when acceleration is on, identity otherwise."""
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def backend_name() -> str:
    return "numba" if USE_NUMBA else "python"
