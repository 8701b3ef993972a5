"""Selects the compiled search kernel when available.

Set ``PARITYSYNTH_PURE=1`` to force the pure-Python kernel.
"""

from __future__ import annotations

import os

from . import _bfs_py

pure_bfs_search = _bfs_py.bfs_search
compiled_bfs_search = None
MAX_KEY_BITS = 64

try:
    from . import _bfs as _compiled  # type: ignore[attr-defined]

    compiled_bfs_search = _compiled.bfs_search
except ImportError:  # extension not built
    _compiled = None

if compiled_bfs_search is not None and os.environ.get("PARITYSYNTH_PURE") != "1":
    BACKEND = "compiled"
else:
    BACKEND = "python"


def bfs_search(n: int, targets: list[int], goal: int, max_len: int):
    """Dispatch to the compiled kernel when the state fits in 64 bits."""
    if BACKEND == "compiled" and n * n + len(targets) <= MAX_KEY_BITS and n <= 8:
        return compiled_bfs_search(n, list(targets), goal, max_len)
    return pure_bfs_search(n, list(targets), goal, max_len)
