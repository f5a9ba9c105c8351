"""Detection of eventually quasi-polynomial behavior from exact samples.

A fit is an exact-match search, never least-squares: candidate periods and
degrees are tried in lexicographic order, each residue class is interpolated
through the last points of the training window, and the candidate is
accepted only if every remaining defined point (including a reserved final
holdout block) matches exactly.  All arithmetic is exact rational; no
tolerance exists anywhere in this module.  A reported fit is only ever
"consistent with the sampled window" since onsets are empirical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import BelowOnsetError, EqpsgError, InsufficientDataError


@dataclass(frozen=True)
class QuasiPolynomial:
    """period p, onset, and one rational coefficient vector per residue class.

    coeffs[r] lists c_0..c_d for arguments congruent to r mod p; a class
    whose arguments never carried data is None.  At least one class keeps a
    nonzero leading coefficient (unless the fit is identically zero).
    """

    period: int
    onset: int
    degree: int
    coeffs: tuple[Optional[tuple[Fraction, ...]], ...]

    def __post_init__(self):
        if self.period < 1 or len(self.coeffs) != self.period:
            raise ValueError("coefficient vectors must cover the residue classes")
        for c in self.coeffs:
            if c is not None and len(c) != self.degree + 1:
                raise ValueError("coefficient vectors must have length degree+1")

    def evaluate(self, n: int) -> Fraction:
        if n < self.onset:
            raise BelowOnsetError(n, self.onset)
        c = self.coeffs[n % self.period]
        if c is None:
            raise EqpsgError(
                f"residue class {n % self.period} (mod {self.period}) carries no data"
            )
        value = Fraction(0)
        for coef in reversed(c):
            value = value * n + coef
        return value

    def to_json_dict(self) -> dict:
        return {
            "period": self.period,
            "onset": self.onset,
            "degree": self.degree,
            "classes": [
                None if c is None else [f"{q.numerator}/{q.denominator}" for q in c]
                for c in self.coeffs
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "QuasiPolynomial":
        classes = []
        for c in data["classes"]:
            if c is None:
                classes.append(None)
            else:
                classes.append(tuple(Fraction(s) for s in c))
        return QuasiPolynomial(data["period"], data["onset"], data["degree"], tuple(classes))


@dataclass(frozen=True)
class SampleSeries:
    """Exact integer samples over a contiguous window, with undefined points
    (arguments where the quantity does not exist) recorded but excluded."""

    values: dict
    n_lo: int
    n_hi: int
    undefined: frozenset

    @staticmethod
    def from_values(values: Mapping[int, int], undefined=()) -> "SampleSeries":
        undef = frozenset(undefined)
        if not values and not undef:
            raise ValueError("empty series")
        keys = set(values) | undef
        lo, hi = min(keys), max(keys)
        if keys != set(range(lo, hi + 1)):
            raise ValueError("series domain must be contiguous")
        if undef & set(values):
            raise ValueError("a point cannot be both defined and undefined")
        return SampleSeries(dict(values), lo, hi, undef)

    def defined_ns(self) -> list[int]:
        return sorted(self.values)


def _interpolate(points: Sequence[tuple[int, int]]) -> tuple[Fraction, ...]:
    """Exact polynomial through the points, power-basis coefficients,
    via Newton divided differences."""
    xs = [p[0] for p in points]
    coeffs_newton = [Fraction(p[1]) for p in points]
    n = len(points)
    for level in range(1, n):
        for j in range(n - 1, level - 1, -1):
            coeffs_newton[j] = (coeffs_newton[j] - coeffs_newton[j - 1]) / (
                xs[j] - xs[j - level]
            )
    # expand the Newton form into power-basis coefficients
    power = [Fraction(0)] * n
    for j in range(n - 1, -1, -1):
        # power <- power * (x - xs[j]) + coeffs_newton[j]
        carry = [Fraction(0)] * n
        for idx in range(n - 1):
            carry[idx + 1] += power[idx]
            carry[idx] -= power[idx] * xs[j]
        carry[0] += coeffs_newton[j]
        power = carry
    return tuple(power)


def _eval_poly(coeffs: Sequence[Fraction], n: int) -> Fraction:
    value = Fraction(0)
    for c in reversed(coeffs):
        value = value * n + c
    return value


def fit(
    series: SampleSeries,
    p_max: int = 12,
    d_max: int = 4,
    holdout: float = 0.2,
) -> Optional[QuasiPolynomial]:
    """Minimal (period, degree, onset) exact fit, or None when nothing in the
    search range reproduces the samples.

    Candidates are tried with period ascending then degree ascending, so the
    returned period is minimal (no divisor fits) and the degree minimal for
    it.  The final holdout fraction of defined points never participates in
    interpolation; it must still match exactly.
    """
    defined = series.defined_ns()
    if len(defined) < (d_max + 2) * p_max:
        raise InsufficientDataError(
            f"{len(defined)} defined points; need at least {(d_max + 2) * p_max}"
        )
    n_hold = max(1, math.ceil(len(defined) * holdout)) if holdout > 0 else 0
    train = defined[: len(defined) - n_hold]
    hold = defined[len(defined) - n_hold :]
    for p in range(1, p_max + 1):
        for d in range(0, d_max + 1):
            qp = _try_candidate(series, train, hold, p, d)
            if qp is not None:
                return qp
    return None


def _try_candidate(
    series: SampleSeries,
    train: list[int],
    hold: list[int],
    p: int,
    d: int,
) -> Optional[QuasiPolynomial]:
    by_class: dict[int, list[int]] = {}
    for n in train:
        by_class.setdefault(n % p, []).append(n)
    hold_classes = {n % p for n in hold}
    if not set(by_class) >= hold_classes:
        return None
    polys: dict[int, tuple[Fraction, ...]] = {}
    for r, ns in by_class.items():
        if len(ns) < d + 2:  # interpolation basis plus at least one witness
            return None
        basis = ns[-(d + 1) :]
        polys[r] = _interpolate([(n, series.values[n]) for n in basis])
    mismatches = []
    hold_set = set(hold)
    for n in series.defined_ns():
        q = polys.get(n % p)
        if q is None:
            return None
        if _eval_poly(q, n) != series.values[n]:
            if n in hold_set:
                return None  # the reserved block must extrapolate exactly
            mismatches.append(n)
    onset = mismatches[-1] + 1 if mismatches else series.n_lo
    # every class must retain a basis plus a witness past the onset
    for r, ns in by_class.items():
        if sum(1 for n in ns if n >= onset) < d + 2:
            return None
    degree = 0
    for q in polys.values():
        top = max((j for j, c in enumerate(q) if c != 0), default=0)
        degree = max(degree, top)
    coeffs: list[Optional[tuple[Fraction, ...]]] = []
    for r in range(p):
        q = polys.get(r)
        if q is None:
            coeffs.append(None)
        else:
            coeffs.append(tuple(q[: degree + 1]) + (Fraction(0),) * (degree + 1 - len(q)))
    return QuasiPolynomial(p, onset, degree, tuple(coeffs))


def evaluate(qp: QuasiPolynomial, n: int) -> Fraction:
    return qp.evaluate(n)


def degree_of(qp: QuasiPolynomial) -> int:
    return qp.degree


def eventually_periodic_set(
    flags: Mapping[int, bool],
    p_max: int = 12,
    holdout: float = 0.2,
) -> Optional[tuple[int, int, tuple[bool, ...]]]:
    """Degree-zero specialization for 0/1 data: (period, onset, pattern),
    pattern[r] being the eventual flag for arguments congruent to r."""
    series = SampleSeries.from_values({n: int(bool(v)) for n, v in flags.items()})
    qp = fit(series, p_max=p_max, d_max=0, holdout=holdout)
    if qp is None:
        return None
    pattern = []
    for c in qp.coeffs:
        if c is None or c[0] not in (0, 1):
            return None
        pattern.append(bool(c[0]))
    return qp.period, qp.onset, tuple(pattern)
