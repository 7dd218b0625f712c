"""Pick the compiled kernels when available, else the pure-Python twins.

Set ``DIARSCORE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("DIARSCORE_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as kernels

BACKEND: str = kernels.NAME

__all__ = ["BACKEND", "kernels"]
