"""Backend selection for the hot kernels.

The compiled extension is preferred; the pure-Python module is used when
the extension is missing or ``TESSCURV_PURE_PYTHON`` is set to a non-empty
value other than ``0``.
"""
import os

from . import _pykernels

if os.environ.get("TESSCURV_PURE_PYTHON", "0") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

bfs_distances = _impl.bfs_distances
rref_int = _impl.rref_int


def backends():
    """Return ``{name: module}`` for every importable backend."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
