"""Backend selection for the integer elimination kernels.

The compiled module is used when it was built; set ``EHRCHOW_PURE_PYTHON=1``
to force the pure-Python fallback.
"""
import os

from . import _kernels_py

if os.environ.get("EHRCHOW_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

rref_int = _impl.rref_int
rank_int = _impl.rank_int
reduce_int = _impl.reduce_int

__all__ = ["BACKEND", "rref_int", "rank_int", "reduce_int"]
