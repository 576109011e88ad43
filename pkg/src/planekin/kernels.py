"""Hot-kernel dispatch: compiled extension when built, pure Python otherwise.

Set ``PLANEKIN_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("PLANEKIN_PURE_PYTHON") != "1":
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

dyad_units = _impl.dyad_units
polyline_crossings = _impl.polyline_crossings

__all__ = ["BACKEND", "dyad_units", "polyline_crossings"]
