"""Kernel backend selection.

The compiled extension is preferred; set ``GENWAIT_PURE_PYTHON=1`` to force
the fallback (the test suite runs both and compares them).
"""

import os

from . import _kernels_py

if os.environ.get("GENWAIT_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

closure = _impl.closure
sample_tau_batch = _impl.sample_tau_batch

__all__ = ["BACKEND", "closure", "sample_tau_batch"]
