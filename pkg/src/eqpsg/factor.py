"""Factorizations, length sets, and delta sets.

Single-element questions enumerate factorizations directly; the semigroup
delta set is a windowed scan over all elements up to a bound.  The scan is
exact within its bound; the completeness flag is true only when the bound
reaches the quadratic worst-case onset past which element delta sets repeat.
"""
from __future__ import annotations

from typing import Optional

from . import _kernels
from .errors import NotNumericalError, ResourceLimitError
from .numsg import SemigroupView

FACTORIZATION_CAP = 10**7

# Bounds above this are scanned only up to a Frobenius-proportional cutoff;
# the completeness flag reports the truncation.
DELTA_FEASIBLE_CAP = 2 * 10**7


def predicted_factorization_count(gens, m: int) -> int:
    """Cheap overestimate of the number of factorizations of m."""
    count = 1
    for g in sorted(gens)[1:]:
        count *= m // g + 1
        if count > 4 * FACTORIZATION_CAP:
            return count
    return count


def factorizations(view: SemigroupView, m: int, cap: int = FACTORIZATION_CAP) -> list[tuple[int, ...]]:
    """All coefficient tuples z with sum z_i * gens_i = m.

    Output is ordered by the reversed tuple, ascending, so the first entry
    maximizes the count of the smallest generator.  Refuses when the
    predicted enumeration size exceeds the cap.
    """
    if m < 0:
        return []
    gens = view.gens
    if predicted_factorization_count(gens, m) > cap:
        raise ResourceLimitError(
            f"enumerating factorizations of {m} over {gens} may exceed {cap}"
        )
    k = len(gens)
    out: list[tuple[int, ...]] = []
    coeffs = [0] * k

    def descend(idx: int, rem: int):
        if idx == 0:
            if rem % gens[0] == 0:
                coeffs[0] = rem // gens[0]
                out.append(tuple(coeffs))
            return
        g = gens[idx]
        for z in range(rem // g + 1):
            coeffs[idx] = z
            descend(idx - 1, rem - z * g)
        coeffs[idx] = 0

    descend(k - 1, m)
    out.sort(key=lambda t: t[::-1])
    return out


def length_set(view: SemigroupView, m: int) -> tuple[int, ...]:
    """Sorted distinct coefficient sums over all factorizations of m;
    empty when m is not an element."""
    return tuple(sorted({sum(f) for f in factorizations(view, m)}))


def delta_of_element(view: SemigroupView, m: int) -> tuple[int, ...]:
    """Successive differences of the length set; empty when |L| <= 1."""
    lengths = length_set(view, m)
    return tuple(sorted({b - a for a, b in zip(lengths, lengths[1:])}))


def default_delta_bound(view: SemigroupView) -> int:
    """Scan bound for the semigroup delta set.

    The repetition onset 2*k*max(gens)^2 is used whenever affordable;
    otherwise the scan is truncated at a Frobenius-proportional cutoff
    (all observed gaps arise near the relation degrees, which live below
    F plus a small multiple of the largest generator).
    """
    if not view.is_numerical:
        raise NotNumericalError("delta sets require a numerical semigroup")
    ak = view.gens[-1]
    onset = 2 * view.k * ak * ak
    if onset <= DELTA_FEASIBLE_CAP:
        return onset
    heuristic = max(4 * (view.frobenius + 2 * ak), 64 * ak)
    return min(onset, heuristic)


def delta_of_semigroup(
    view: SemigroupView, scan_bound: Optional[int] = None
) -> tuple[tuple[int, ...], bool]:
    """Union of element delta sets over S intersected with [0, scan_bound].

    Returns (sorted gaps, complete) where complete is true iff the bound
    reaches the repetition onset 2*k*max(gens)^2.
    """
    if not view.is_numerical:
        raise NotNumericalError("delta sets require a numerical semigroup")
    if scan_bound is None:
        scan_bound = default_delta_bound(view)
    ak = view.gens[-1]
    complete = scan_bound >= 2 * view.k * ak * ak
    deltas = _kernels.delta_scan(view.gens, scan_bound)
    return tuple(deltas), complete
