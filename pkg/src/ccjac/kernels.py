"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``CCJAC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if not os.environ.get("CCJAC_PURE_PYTHON"):
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

poly_mul = _impl.poly_mul
weyl_mul = _impl.weyl_mul
reorder_coefficients = _impl.reorder_coefficients
