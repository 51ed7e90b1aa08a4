"""Backend selection for the compiled kernels.

Numba is used when importable unless ``CHMETF_NO_NUMBA`` is set to a
truthy value, in which case the pure-numpy kernels are used instead.
"""

import os

_FLAG = os.environ.get("CHMETF_NO_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency here
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED

NUMBA_OPTS = {"cache": True, "nogil": True}


def njit(func):
    """Compile ``func`` in nopython mode, or return it unchanged without numba."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(func, **NUMBA_OPTS)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
