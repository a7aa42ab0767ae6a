"""Kernel selection: compiled extension when available, pure Python otherwise.

``QCAYLEY_PURE_PYTHON=1`` forces the fallback.  ``BACKEND`` records the
active choice; ``backends()`` exposes both for the benchmark harness.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("QCAYLEY_PURE_PYTHON"):
    try:
        from . import _ckernels  # type: ignore[attr-defined]

        _impl = _ckernels
        BACKEND = "compiled"
    except ImportError:
        pass

bfs_tree = _impl.bfs_tree
ql_sums_scaled = _impl.ql_sums_scaled
cn_lower_scaled = _impl.cn_lower_scaled
parseval_violations = _impl.parseval_violations

pure = _pykernels


def backends() -> dict:
    """Name -> module for every importable kernel implementation."""
    out = {"python": _pykernels}
    if BACKEND == "compiled":
        out["compiled"] = _impl
    return out
