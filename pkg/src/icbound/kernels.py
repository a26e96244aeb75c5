"""Select the compiled kernel module when available, pure Python otherwise.

The compiled extension (`icbound._speedups`, built from Cython at install
time) and `icbound._kernels_py` export the same functions. Set ICB_PURE=1 to
force the fallback even when the extension built, e.g. to compare the two in
the benchmark or to rule the extension out while debugging.
"""

from __future__ import annotations

import os

if os.environ.get("ICB_PURE"):
    from icbound import _kernels_py as _impl
else:
    try:
        from icbound import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from icbound import _kernels_py as _impl

BACKEND = _impl.BACKEND

btran_dense = _impl.btran_dense
ftran_sparse = _impl.ftran_sparse
pivot_update = _impl.pivot_update
price_columns = _impl.price_columns
gfp_rref = _impl.gfp_rref

__all__ = [
    "BACKEND",
    "btran_dense",
    "ftran_sparse",
    "pivot_update",
    "price_columns",
    "gfp_rref",
]
