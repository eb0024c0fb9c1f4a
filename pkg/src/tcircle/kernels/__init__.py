"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``TCIRCLE_PURE=1`` in the environment to force the pure implementation
even when the compiled one is importable (used by the benchmark and the
equivalence tests).
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("TCIRCLE_PURE") == "1":
    _impl = _pure
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

IMPLEMENTATION = _impl.IMPLEMENTATION

INFEASIBLE = _impl.INFEASIBLE
STATUS_OPTIMAL = _impl.STATUS_OPTIMAL
STATUS_TIMEOUT = _impl.STATUS_TIMEOUT

strip_alternation_count = _impl.strip_alternation_count
strip_self_count = _impl.strip_self_count
circular_interleave = _impl.circular_interleave
longest_cycle = _impl.longest_cycle
book_search = _impl.book_search
book_embed2 = _impl.book_embed2
cyl_subproblem = _impl.cyl_subproblem
