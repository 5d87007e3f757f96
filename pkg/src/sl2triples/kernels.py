"""Selects the compiled elimination kernels, falling back to numpy.

Set ``SL2TRIPLES_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and by the kernel-equivalence tests).
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("SL2TRIPLES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

rref = _impl.rref
matmul = _impl.matmul

__all__ = ["BACKEND", "rref", "matmul"]
