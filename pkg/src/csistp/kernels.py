"""Kernel backend selection.

The hot numeric loops (shortest-path closure, Steiner subset DP, exhaustive
tree oracle) exist twice: numba-compiled in `_kernels_numba` and vectorized
pure numpy in `_kernels_numpy`. Setting CSISTP_PURE_NUMPY=1 in the
environment forces the numpy path; otherwise numba is used when importable.
Both backends produce bitwise-identical results.
"""

import os

_FORCE_NUMPY = os.environ.get("CSISTP_PURE_NUMPY", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

if _FORCE_NUMPY:
    from . import _kernels_numpy as _impl
else:
    try:
        from . import _kernels_numba as _impl
    except ImportError:
        from . import _kernels_numpy as _impl

BACKEND = _impl.BACKEND
floyd_warshall = _impl.floyd_warshall
steiner_dp = _impl.steiner_dp
oracle_best_tree = _impl.oracle_best_tree
