"""Kernel backend selection.

Imports the compiled extension when present, falling back to the pure-Python
implementation. Set SYNCOORDS_PURE_PYTHON=1 to force the fallback (useful for
debugging and for benchmarking the two backends against each other).
"""

from __future__ import annotations

import os

if os.environ.get("SYNCOORDS_PURE_PYTHON"):
    from . import _speedups_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _speedups_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

smooth_bounds = _impl.smooth_bounds
line_edges = _impl.line_edges

__all__ = ["BACKEND", "smooth_bounds", "line_edges"]
