"""Kernel dispatch: compiled fast path with pure-Python fallback.

The compiled extension (``nilqp._fastkernel``) runs the elimination loops on
64-bit machine integers with 128-bit intermediates and raises OverflowError
the moment any value might not fit, in which case the computation is redone
by the pure kernel on arbitrary-precision integers.  Both kernels compute the
mathematically unique reduced row echelon form, so results are identical.

Set ``NILQP_PURE=1`` to force the pure kernel (used by the benchmark and for
debugging).
"""

from __future__ import annotations

import os

from . import _purekernel

try:
    from . import _fastkernel  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on build environment
    _fastkernel = None

_FORCE_PURE = os.environ.get("NILQP_PURE", "") not in ("", "0")


def backend_name() -> str:
    if _fastkernel is not None and not _FORCE_PURE:
        return "compiled"
    return "pure"


def _dispatch(fast_fn, pure_fn, rows, ncols):
    if fast_fn is not None and not _FORCE_PURE:
        try:
            return fast_fn(rows, ncols)
        except OverflowError:
            pass
    return pure_fn(rows, ncols)


def rref_q(rows, ncols):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    return _dispatch(
        getattr(_fastkernel, "rref_q", None) if _fastkernel else None,
        _purekernel.rref_q,
        rows,
        ncols,
    )


def rank_q(rows, ncols) -> int:
    return _dispatch(
        getattr(_fastkernel, "rank_q", None) if _fastkernel else None,
        _purekernel.rank_q,
        rows,
        ncols,
    )


def rref_qi(rows, ncols):
    """Reduced row echelon form over Q(i); returns (rows, pivot columns)."""
    return _dispatch(
        getattr(_fastkernel, "rref_qi", None) if _fastkernel else None,
        _purekernel.rref_qi,
        rows,
        ncols,
    )


def rank_qi(rows, ncols) -> int:
    return _dispatch(
        getattr(_fastkernel, "rank_qi", None) if _fastkernel else None,
        _purekernel.rank_qi,
        rows,
        ncols,
    )
