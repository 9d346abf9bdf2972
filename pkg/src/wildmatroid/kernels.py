"""Kernel selection: the compiled extension when it imports, else pure Python.

Set ``WILDMATROID_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("WILDMATROID_PURE"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

down_closure = _impl.down_closure
minimal_absent = _impl.minimal_absent
maximal_present = _impl.maximal_present
pairwise_or = _impl.pairwise_or
max_common = _impl.max_common

__all__ = [
    "BACKEND",
    "down_closure",
    "minimal_absent",
    "maximal_present",
    "pairwise_or",
    "max_common",
]
