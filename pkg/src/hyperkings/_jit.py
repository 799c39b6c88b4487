"""Optional numba acceleration.

Set ``HYPERKINGS_DISABLE_JIT=1`` to run every kernel as plain Python over
numpy arrays. The fallback is also used when numba cannot be imported.
"""

import os

_DISABLED = os.environ.get("HYPERKINGS_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError("disabled by HYPERKINGS_DISABLE_JIT")
    from numba import njit as _numba_njit

    JIT_ENABLED = True
except ImportError:
    _numba_njit = None
    JIT_ENABLED = False


def njit(func):
    """Compile ``func`` in nopython mode, or return it untouched in fallback mode."""
    if JIT_ENABLED:
        return _numba_njit(cache=True, nogil=True)(func)
    return func
