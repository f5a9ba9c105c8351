"""Single-n numerical semigroup invariants by direct combinatorial algorithms.

A SemigroupView is built once per generator tuple: the coin-problem dynamic
program fills a membership table through the Frobenius number (found exactly
by growing the table until a full run of the multiplicity is all-members),
and every invariant is answered from that table.  Generators with gcd d > 1
are handled through the reduced semigroup on gens/d; numerical invariants
are refused for them rather than silently computed on the reduction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import NotMemberError, NotNumericalError, ResourceLimitError

_TABLE_HARD_CAP = 1 << 31


@dataclass
class SemigroupView:
    """Immutable after build; all queries are read-only."""

    gens: tuple[int, ...]
    gcd_d: int
    multiplicity: int
    frobenius: Optional[int]  # None marks a non-numerical semigroup
    _red_gens: tuple[int, ...]
    _red_frob: int
    _red_table: np.ndarray  # uint8 over [0, _red_frob + 1]
    apery_cache: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.gens)

    @property
    def is_numerical(self) -> bool:
        return self.gcd_d == 1

    @property
    def table_bound(self) -> int:
        """B of the membership table: the table covers [0, B]."""
        return self.gcd_d * (self._red_frob + 1)

    def contains(self, t: int) -> bool:
        if t < 0:
            return False
        if self.gcd_d > 1:
            if t % self.gcd_d:
                return False
            t //= self.gcd_d
        if t > self._red_frob:
            return True
        return bool(self._red_table[t])

    def members_at(self, values) -> np.ndarray:
        """Vectorized membership for an int array (any values, any sign)."""
        arr = np.asarray(values, dtype=np.int64)
        if self.gcd_d > 1:
            divisible = arr % self.gcd_d == 0
            out = np.zeros(arr.shape, dtype=bool)
            red = arr[divisible] // self.gcd_d
            out[divisible] = self._red_members_at(red)
            return out
        return self._red_members_at(arr)

    def _red_members_at(self, arr: np.ndarray) -> np.ndarray:
        out = arr > self._red_frob
        in_range = (arr >= 0) & ~out
        out[in_range] = self._red_table[arr[in_range]].astype(bool)
        return out

    def membership_table(self) -> np.ndarray:
        """Boolean table over [0, table_bound]."""
        if self.gcd_d == 1:
            return self._red_table.astype(bool)
        table = np.zeros(self.table_bound + 1, dtype=bool)
        table[:: self.gcd_d] = self._red_table.astype(bool)
        return table

    def _core(self) -> np.ndarray:
        """Membership over [0, frobenius] as bool; requires a numerical view."""
        if not self.is_numerical:
            raise NotNumericalError("semigroup generators have gcd > 1")
        if self.frobenius < 0:
            return np.zeros(0, dtype=bool)
        return self._red_table[: self.frobenius + 1].astype(bool)


def _reduced_frobenius_table(gens: tuple[int, ...]) -> tuple[int, np.ndarray]:
    """Exact Frobenius number and membership table over [0, F + 1] for
    gcd-1 generators, by growing the dynamic program geometrically until a
    full multiplicity-length run of members certifies the tail."""
    mult = gens[0]
    if mult == 1:
        return -1, np.ones(1, dtype=np.uint8)
    size = max(4 * gens[-1], 64)
    while True:
        if size > _TABLE_HARD_CAP:
            raise ResourceLimitError(
                f"membership table for {gens} would exceed {_TABLE_HARD_CAP} entries"
            )
        table = _kernels.member_table(gens, size)
        falses = np.flatnonzero(table == 0)
        frob = int(falses[-1])
        if size - 1 - frob >= mult:
            return frob, table[: frob + 2].copy()
        size *= 4


def build(gens: Sequence[int]) -> SemigroupView:
    """Build the view: gcd, exact Frobenius data, membership table."""
    gl = tuple(sorted(int(g) for g in gens))
    if not gl:
        raise ValueError("at least one generator is required")
    if gl[0] < 1:
        raise ValueError("generators must be positive integers")
    d = 0
    for g in gl:
        d = math.gcd(d, g)
    red = tuple(g // d for g in gl)
    red_frob, red_table = _reduced_frobenius_table(red)
    return SemigroupView(
        gens=gl,
        gcd_d=d,
        multiplicity=gl[0],
        frobenius=red_frob if d == 1 else None,
        _red_gens=red,
        _red_frob=red_frob,
        _red_table=red_table,
    )


def is_numerical(view: SemigroupView) -> bool:
    return view.is_numerical


def genus(view: SemigroupView) -> int:
    """Number of gaps |N \\ S|."""
    core = view._core()
    return int(np.count_nonzero(~core))


def apery_set(view: SemigroupView, x: int) -> tuple[int, ...]:
    """Least member of each residue class mod x, sorted; exactly x elements."""
    if not view.is_numerical:
        raise NotNumericalError("Apery sets require a numerical semigroup")
    if x <= 0 or not view.contains(x):
        raise NotMemberError(x)
    cached = view.apery_cache.get(x)
    if cached is not None:
        return cached
    frob = view.frobenius
    limit = max(frob, -1) + x + 1
    ext = np.ones(limit, dtype=bool)
    upto = min(frob + 1, limit)
    if upto > 0:
        ext[:upto] = view._red_table[:upto].astype(bool)
    members = np.flatnonzero(ext)
    residues = members % x
    _, first = np.unique(residues, return_index=True)
    ap = tuple(sorted(int(v) for v in members[first]))
    view.apery_cache[x] = ap
    return ap


def ith_apery_element(view: SemigroupView, i: int) -> int:
    """i-th smallest element of the Apery set w.r.t. the multiplicity."""
    if not view.is_numerical:
        raise NotNumericalError("Apery sets require a numerical semigroup")
    if i < 1 or i > view.multiplicity:
        raise IndexError(f"i must be in [1, {view.multiplicity}], got {i}")
    return apery_set(view, view.multiplicity)[i - 1]


def pseudo_frobenius(view: SemigroupView) -> tuple[int, ...]:
    """Gaps x with x + s in S for every nonzero s in S.

    Checking x + g for the generators alone suffices: any nonzero s has a
    generator summand, so membership of x + s follows by closure.
    """
    core = view._core()
    frob = view.frobenius
    if frob < 0:
        return (-1,)  # S = N: -1 is the lone pseudo-Frobenius number
    ok = ~core
    for g in view.gens:
        shifted = np.ones(frob + 1, dtype=bool)
        if g <= frob:
            shifted[: frob + 1 - g] = core[g:]
        ok &= shifted
    return tuple(int(x) for x in np.flatnonzero(ok))


def semigroup_type(view: SemigroupView) -> int:
    return len(pseudo_frobenius(view))


def is_symmetric(view: SemigroupView) -> bool:
    """Every gap z reflects to a member F - z."""
    core = view._core()
    if view.frobenius < 0:
        return True
    return bool(np.all(core | core[::-1]))


def is_pseudo_symmetric(view: SemigroupView) -> bool:
    core = view._core()
    frob = view.frobenius
    if frob < 0 or frob % 2 != 0:
        return False
    half = np.arange(frob + 1) == frob // 2
    return bool(np.all(core | core[::-1] | half))


def is_irreducible(view: SemigroupView) -> bool:
    frob = view.frobenius if view.is_numerical else None
    if frob is None:
        raise NotNumericalError("irreducibility requires a numerical semigroup")
    if frob < 0:
        return False  # N is not a proper semigroup
    if frob % 2 == 1:
        return is_symmetric(view)
    return is_pseudo_symmetric(view)


def fundamental_gaps(view: SemigroupView) -> tuple[int, ...]:
    """Gaps x with 2x and 3x both in S."""
    core = view._core()
    xs = np.flatnonzero(~core)
    if xs.size == 0:
        return ()
    keep = view.members_at(2 * xs) & view.members_at(3 * xs)
    return tuple(int(x) for x in xs[keep])
