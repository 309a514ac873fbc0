"""Kernel selection.

The compiled extension is used when it imports; otherwise the numpy
fallback. ``ENTROSEED_BACKEND=python`` forces the fallback.
"""
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

AVAILABLE = {"python": _pykernels}
if _ckernels is not None:
    AVAILABLE["cython"] = _ckernels


def _pick():
    forced = os.environ.get("ENTROSEED_BACKEND", "").strip().lower()
    if forced:
        if forced not in AVAILABLE:
            raise ImportError(f"ENTROSEED_BACKEND={forced!r} is not available "
                              f"(have {sorted(AVAILABLE)})")
        return forced
    return "cython" if "cython" in AVAILABLE else "python"


BACKEND = _pick()
kernels = AVAILABLE[BACKEND]


def get(name=None):
    """Kernel module by name, or the active one."""
    return kernels if name is None else AVAILABLE[name]
