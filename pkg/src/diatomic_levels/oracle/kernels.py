"""Backend selection for the tridiagonal eigenvalue kernel.

The compiled extension is used when it imports; otherwise the NumPy
fallback. Set ``DIATOMIC_LEVELS_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _sturm_py

_compiled = None
if not os.environ.get("DIATOMIC_LEVELS_PURE_PYTHON"):
    try:
        from . import _sturm as _compiled
    except ImportError:
        _compiled = None

BACKENDS = {"python": _sturm_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

BACKEND = "cython" if _compiled is not None else "python"
_active = BACKENDS[BACKEND]

sturm_count = _active.sturm_count
tridiag_lowest = _active.tridiag_lowest


def get_backend(name: str):
    """Module exposing ``sturm_count`` and ``tridiag_lowest`` for ``name``."""
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None
