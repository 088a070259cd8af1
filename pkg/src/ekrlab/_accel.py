"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the NumPy fallback.
Set ``EKRLAB_PURE_PYTHON=1`` to force the fallback (tests and benchmarks do).
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py


def _load() -> ModuleType:
    if os.environ.get("EKRLAB_PURE_PYTHON", "") not in ("", "0"):
        return _kernels_py
    try:
        from . import _kernels
    except ImportError:
        return _kernels_py
    return _kernels


kernels = _load()
BACKEND: str = kernels.BACKEND
