"""Backend selection for the hot kernels.

The compiled extension (eqpsg._speedups) is preferred; the pure
Python/numpy module (eqpsg._fallback) is the drop-in replacement.  Set
EQPSG_BACKEND=pure or EQPSG_BACKEND=ext to force one side.
"""
from __future__ import annotations

import math
import os

from . import _fallback

_forced = os.environ.get("EQPSG_BACKEND", "").lower()
if _forced == "pure":
    _impl = _fallback
    BACKEND = "pure"
elif _forced == "ext":
    from . import _speedups as _impl  # noqa: F401  (ImportError is the point)

    BACKEND = "ext"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "ext"
    except ImportError:
        _impl = _fallback
        BACKEND = "pure"

member_table = _impl.member_table
betti1_scan = _impl.betti1_scan

_MAX_WORDS = 512


def length_span(gens, bound: int) -> int:
    """Upper bound on the number of distinct factorization lengths of any
    element up to ``bound``: lengths lie in [m/ak, m/a1]."""
    gens = sorted(set(int(g) for g in gens))
    a1, ak = gens[0], gens[-1]
    return bound // a1 - bound // ak + 2


def delta_scan(gens, bound: int) -> list[int]:
    """Sorted distinct length-set gaps over all elements in [0, bound].

    Dispatches on the mask width needed: single 64-bit words when the
    length span stays small, multi-word masks in the extension, and a
    bignum loop as the general fallback.  Two distinct generators have
    arithmetic-progression length sets, so their only possible gap is the
    difference of the generators; it is realised as soon as some element
    has two factorizations.
    """
    distinct = sorted(set(int(g) for g in gens))
    if bound < 0 or len(distinct) <= 1:
        return []
    if len(distinct) == 2:
        a, b = distinct
        g = math.gcd(a, b)
        first_double = (a // g) * b  # smallest element with two factorizations
        if bound >= first_double:
            return [(b - a) // g]
        return _fallback.delta_scan_bigint(distinct, bound)
    span = length_span(distinct, bound)
    if span <= 60:
        return _impl.delta_scan_u64(distinct, bound)
    if BACKEND == "ext":
        words = (span + 63) // 64 + 1
        if words <= _MAX_WORDS:
            return _impl.delta_scan_words(distinct, bound, words)
    return _fallback.delta_scan_bigint(distinct, bound)
