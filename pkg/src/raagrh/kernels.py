"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``RAAGRH_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("RAAGRH_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

WordKernel = _impl.WordKernel
canonical_code = _impl.canonical_code

__all__ = ["BACKEND", "WordKernel", "canonical_code"]
