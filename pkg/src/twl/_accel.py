"""Backend selection for the numeric kernels.

Set ``TWL_PURE_NUMPY=1`` to force the pure-numpy code paths even when numba
is importable. The flag is read once, at import time.
"""

import os

_FLAG = os.environ.get("TWL_PURE_NUMPY", "").strip().lower()

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _FLAG in ("", "0", "false", "no")


def njit(func):
    """Compile ``func`` with numba when available, otherwise return it unchanged."""
    if not HAVE_NUMBA:
        return func
    from numba import njit as _njit

    return _njit(cache=True)(func)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
