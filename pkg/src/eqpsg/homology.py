"""Squarefree divisor complexes, reduced simplicial homology over a field,
graded and coarse Betti numbers, minimal presentation sizes, degree-bound
checkers, and the four-generator family with unbounded first Betti number.

Homology is computed from boundary-matrix ranks: fraction-free (Bareiss)
elimination over the rationals, modular elimination over a prime field.
The augmentation map to the empty face is included, so dimensions are
reduced: H~_0 counts connected components minus one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Optional, Sequence

from . import numsg, _kernels
from .errors import (
    BoundViolationError,
    EmptyComplexError,
    MissingCapError,
    NotMemberError,
    OddDegreeError,
    VerificationError,
)
from .factor import factorizations
from .polyfam import ParametricFamily, PolynomialZ, family_from_polys

# ---------------------------------------------------------------------------
# fields and exact rank
# ---------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: rationals (p is None) or the prime field GF(p)."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


RATIONALS = FieldSpec(None)
GF2 = FieldSpec(2)


def parse_field(text: str) -> FieldSpec:
    t = text.strip().lower()
    if t == "q":
        return RATIONALS
    if t.startswith("f") and t[1:].isdigit():
        return FieldSpec(int(t[1:]))
    raise ValueError(f"unknown field spec {text!r}; use q or f<prime>")


def _rank_rational(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, nrows):
            factor = m[r][col]
            row = m[r]
            top = m[rank]
            for c in range(col + 1, ncols):
                row[c] = (row[c] * pv - factor * top[c]) // prev
            row[col] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def _rank_mod(rows: list[list[int]], p: int) -> int:
    m = [[v % p for v in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def matrix_rank(rows: list[list[int]], fieldspec: FieldSpec) -> int:
    if not rows or not rows[0]:
        return 0
    if fieldspec.p is None:
        return _rank_rational(rows)
    return _rank_mod(rows, fieldspec.p)


# ---------------------------------------------------------------------------
# simplicial complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed face set over the vertex set {1..k}."""

    k: int
    faces: frozenset[frozenset[int]]

    def __post_init__(self):
        if self.faces:
            if frozenset() not in self.faces:
                raise ValueError("a nonempty complex must contain the empty face")
            for f in self.faces:
                for v in f:
                    if not 1 <= v <= self.k:
                        raise ValueError(f"vertex {v} outside 1..{self.k}")
                for sub in (f - {v} for v in f):
                    if sub not in self.faces:
                        raise ValueError(f"face {set(f)} missing subset {set(sub)}")

    @staticmethod
    def closure(k: int, faces) -> "SimplicialComplex":
        """Build the downward closure of the given faces."""
        closed: set[frozenset[int]] = set()
        stack = [frozenset(f) for f in faces]
        if stack:
            stack.append(frozenset())
        while stack:
            f = stack.pop()
            if f in closed:
                continue
            closed.add(f)
            for v in f:
                stack.append(f - {v})
        return SimplicialComplex(k, frozenset(closed))

    @property
    def dimension(self) -> int:
        if not self.faces:
            raise EmptyComplexError("empty complex")
        return max(len(f) for f in self.faces) - 1

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for f in self.faces if len(f) == 1 for v in f))

    def faces_of_dim(self, d: int) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(f)) for f in self.faces if len(f) == d + 1)

    def connected_components(self) -> int:
        verts = self.vertices()
        parent = {v: v for v in verts}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for f in self.faces:
            if len(f) == 2:
                a, b = sorted(f)
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        return len({find(v) for v in verts})


def boundary_matrix(c: SimplicialComplex, d: int) -> list[list[int]]:
    """Matrix of the boundary map from d-faces to (d-1)-faces, with the
    augmentation to the empty face at d = 0.  Faces are ordered
    lexicographically; the sign of removing the j-th vertex is (-1)^j."""
    lower = c.faces_of_dim(d - 1)
    upper = c.faces_of_dim(d)
    index = {f: i for i, f in enumerate(lower)}
    rows = [[0] * len(upper) for _ in lower]
    for col, f in enumerate(upper):
        for j in range(len(f)):
            sub = f[:j] + f[j + 1 :]
            rows[index[sub]][col] = (-1) ** j
    return rows


def reduced_homology_dims(c: SimplicialComplex, fieldspec: FieldSpec = RATIONALS) -> tuple[int, ...]:
    """dim H~_i for i = 0..dimension, from boundary ranks."""
    if not c.faces:
        raise EmptyComplexError("empty complex has no homology")
    top = c.dimension
    if top < 0:
        return ()
    counts = [len(c.faces_of_dim(d)) for d in range(top + 1)]
    ranks = [matrix_rank(boundary_matrix(c, d), fieldspec) for d in range(top + 1)]
    ranks.append(0)  # boundary map above the top dimension
    return tuple(counts[i] - ranks[i] - ranks[i + 1] for i in range(top + 1))


def reduced_euler_characteristic(c: SimplicialComplex) -> int:
    """Alternating face-count sum minus one (for complexes with vertices)."""
    if not c.faces:
        raise EmptyComplexError("empty complex")
    total = 0
    for f in c.faces:
        if f:
            total += (-1) ** (len(f) - 1)
    return total - 1


# ---------------------------------------------------------------------------
# affine membership and divisor complexes
# ---------------------------------------------------------------------------


def _as_vectors(gens) -> list[tuple[int, ...]]:
    out = []
    for g in gens:
        if isinstance(g, int):
            out.append((g,))
        else:
            out.append(tuple(int(v) for v in g))
    dims = {len(v) for v in out}
    if len(dims) != 1:
        raise ValueError("generators have mixed dimensions")
    return out


def affine_member(gens, lam, memo: Optional[dict] = None) -> bool:
    """Is lam an N-combination of the generator vectors?  Depth-first search
    with coordinate pruning, memoized on the target vector."""
    vecs = _as_vectors(gens)
    target = (lam,) if isinstance(lam, int) else tuple(int(v) for v in lam)
    if len(target) != len(vecs[0]):
        raise ValueError("dimension mismatch")
    for v in vecs:
        if any(c < 0 for c in v) or not any(v):
            raise ValueError("generators must be nonzero with nonnegative coordinates")
    if memo is None:
        memo = {}

    def descend(x: tuple[int, ...]) -> bool:
        if any(c < 0 for c in x):
            return False
        if not any(x):
            return True
        hit = memo.get(x)
        if hit is not None:
            return hit
        memo[x] = False
        for g in vecs:
            y = tuple(a - b for a, b in zip(x, g))
            if descend(y):
                memo[x] = True
                break
        return memo[x]

    return descend(target)


class _MembershipOracle:
    """Shared membership for one enumeration run: a table-backed view for
    dimension one, a memoized search in higher dimension."""

    def __init__(self, gens):
        self.vecs = _as_vectors(gens)
        self.m = len(self.vecs[0])
        if self.m == 1:
            self.view = numsg.build([v[0] for v in self.vecs])
        else:
            self.memo: dict = {}

    def __call__(self, vec: tuple[int, ...]) -> bool:
        if self.m == 1:
            return self.view.contains(vec[0])
        return affine_member(self.vecs, vec, self.memo)


def sq_divisor_complex(gens, lam, member: Optional[Callable] = None) -> SimplicialComplex:
    """Faces are the generator subsets T with lam - sum_T g still a member."""
    vecs = _as_vectors(gens)
    k = len(vecs)
    if k > 20:
        raise ValueError("divisor complexes are limited to 20 generators")
    target = (lam,) if isinstance(lam, int) else tuple(int(v) for v in lam)
    if member is None:
        member = _MembershipOracle(vecs)
    if not member(target):
        raise NotMemberError(lam)
    faces = []
    for r in range(0, k + 1):
        for subset in combinations(range(k), r):
            rest = list(target)
            for i in subset:
                for j, c in enumerate(vecs[i]):
                    rest[j] -= c
            if min(rest) >= 0 and member(tuple(rest)):
                faces.append(frozenset(i + 1 for i in subset))
    return SimplicialComplex(k, frozenset(faces))


# ---------------------------------------------------------------------------
# Betti numbers
# ---------------------------------------------------------------------------


@dataclass
class GradedBettiTable:
    """Nonzero graded entries (i, degree) -> beta, with coarse totals."""

    k: int
    entries: dict = field(default_factory=dict)

    def add(self, i: int, degree, beta: int):
        if beta:
            self.entries[(i, tuple(degree) if not isinstance(degree, int) else (degree,))] = beta

    def coarse(self, i: int) -> int:
        return sum(b for (j, _), b in self.entries.items() if j == i)

    def to_text(self) -> str:
        lines = ["degree;i;beta"]
        for (i, deg), b in sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            deg_txt = ",".join(str(v) for v in deg)
            lines.append(f"{deg_txt};{i};{b}")
        return "\n".join(lines) + "\n"


def _betti_cutoff(scalars: Sequence[int], frob: int, i: int) -> int:
    """Degrees past frob plus the i+1 largest generators have a complete
    i-skeleton, hence no homology in dimension i-1."""
    srt = sorted(scalars, reverse=True)
    return frob + sum(srt[: min(i + 1, len(srt))])


def graded_betti(gens, lam, i: int, fieldspec: FieldSpec = RATIONALS) -> int:
    """dim of reduced (i-1)-homology of the divisor complex at lam."""
    if i < 1:
        raise ValueError("graded Betti numbers are indexed from i = 1")
    c = sq_divisor_complex(gens, lam)
    dims = reduced_homology_dims(c, fieldspec)
    return dims[i - 1] if i - 1 < len(dims) else 0


def coarse_betti(
    gens,
    i: int,
    fieldspec: FieldSpec = RATIONALS,
    degree_cap: Optional[int] = None,
) -> tuple[int, bool]:
    """Sum of graded Betti numbers over all degrees.

    Complete in dimension one (finite enumeration past which complexes are
    full skeletons); in higher ambient dimension the sum is a lower bound
    over the box [0, degree_cap]^m and flagged incomplete.
    """
    if i < 1:
        raise ValueError("coarse Betti numbers are indexed from i = 1")
    vecs = _as_vectors(gens)
    m = len(vecs[0])
    if m == 1:
        scalars = [v[0] for v in vecs]
        d = 0
        for g in scalars:
            d = math.gcd(d, g)
        red = [g // d for g in scalars]  # Betti data is invariant under scaling
        view = numsg.build(red)
        if i == 1:
            return int(_kernels.betti1_scan(view._red_table, view.frobenius, sorted(red))), True
        cutoff = _betti_cutoff(red, view.frobenius, i)
        member = lambda vec: view.contains(vec[0])
        total = 0
        for lam in range(0, cutoff + 1):
            if not view.contains(lam):
                continue
            if view.contains(lam - sum(red)):
                continue  # full simplex, acyclic
            c = sq_divisor_complex([(g,) for g in red], lam, member)
            dims = reduced_homology_dims(c, fieldspec)
            if i - 1 < len(dims):
                total += dims[i - 1]
        return total, True
    if degree_cap is None:
        raise MissingCapError("ambient dimension > 1 requires a degree cap")
    member = _MembershipOracle(vecs)
    total = 0
    for lam in product(range(degree_cap + 1), repeat=m):
        if not member(lam):
            continue
        c = sq_divisor_complex(vecs, lam, member)
        dims = reduced_homology_dims(c, fieldspec)
        if i - 1 < len(dims):
            total += dims[i - 1]
    return total, False


def graded_betti_table(
    gens,
    i_max: int,
    fieldspec: FieldSpec = RATIONALS,
    degree_cap: Optional[int] = None,
) -> GradedBettiTable:
    """All nonzero graded Betti numbers for 1 <= i <= i_max (plus the
    conventional unit in homological index 0 at degree zero)."""
    vecs = _as_vectors(gens)
    m = len(vecs[0])
    table = GradedBettiTable(k=len(vecs))
    table.add(0, (0,) * m, 1)
    if m == 1:
        scalars = [v[0] for v in vecs]
        d = 0
        for g in scalars:
            d = math.gcd(d, g)
        red = [g // d for g in scalars]
        view = numsg.build(red)
        member = lambda vec: view.contains(vec[0])
        cutoff = _betti_cutoff(red, view.frobenius, i_max)
        for lam in range(1, cutoff + 1):
            if not view.contains(lam) or view.contains(lam - sum(red)):
                continue
            c = sq_divisor_complex([(g,) for g in red], lam, member)
            dims = reduced_homology_dims(c, fieldspec)
            for i in range(1, i_max + 1):
                if i - 1 < len(dims) and dims[i - 1]:
                    table.add(i, (lam * d,), dims[i - 1])
        return table
    if degree_cap is None:
        raise MissingCapError("ambient dimension > 1 requires a degree cap")
    member = _MembershipOracle(vecs)
    for lam in product(range(degree_cap + 1), repeat=m):
        if not any(lam) or not member(lam):
            continue
        c = sq_divisor_complex(vecs, lam, member)
        dims = reduced_homology_dims(c, fieldspec)
        for i in range(1, i_max + 1):
            if i - 1 < len(dims) and dims[i - 1]:
                table.add(i, lam, dims[i - 1])
    return table


def _factorization_graph_components(facs: list[tuple[int, ...]]) -> int:
    n = len(facs)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    k = len(facs[0]) if facs else 0
    for coord in range(k):
        first = None
        for idx, f in enumerate(facs):
            if f[coord] > 0:
                if first is None:
                    first = idx
                else:
                    ra, rb = find(first), find(idx)
                    if ra != rb:
                        parent[ra] = rb
    return len({find(i) for i in range(n)})


def minimal_presentation_size(gens) -> int:
    """Size of a minimal presentation, computed two independent ways.

    The homological route sums connected-component defects of divisor
    complexes; the combinatorial route counts connected components of
    factorization graphs (nodes are factorizations, edges join those
    sharing a nonzero coordinate).  The two counts must agree.
    """
    vecs = _as_vectors(gens)
    if len(vecs[0]) != 1:
        raise ValueError("minimal presentations are computed for dimension one")
    scalars = [v[0] for v in vecs]
    d = 0
    for g in scalars:
        d = math.gcd(d, g)
    red = sorted(g // d for g in scalars)
    homological = coarse_betti(red, 1, RATIONALS)[0]
    view = numsg.build(red)
    cutoff = _betti_cutoff(red, view.frobenius, 1)
    combinatorial = 0
    for lam in range(1, cutoff + 1):
        if not view.contains(lam):
            continue
        facs = factorizations(view, lam)
        if facs:
            combinatorial += _factorization_graph_components(facs) - 1
    if homological != combinatorial:
        raise VerificationError(
            f"presentation size mismatch for {scalars}: homology {homological}, "
            f"factorization graphs {combinatorial}"
        )
    return homological


# ---------------------------------------------------------------------------
# the unbounded-Betti four-generator family
# ---------------------------------------------------------------------------


def bresinsky_generators(d: int, n: int) -> tuple[tuple[int, int, int, int], int]:
    """Four generators 4n^d - 2n^(d/2), 4n^d - 1, 4n^d + 2n^(d/2),
    4n^d + 4n^(d/2) - 1, plus the step M = 2n^(d/2) - 1."""
    if d < 2 or d % 2 != 0:
        raise OddDegreeError("the family needs an even degree d >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    t = n ** (d // 2)
    base = 4 * n**d
    gens = (base - 2 * t, base - 1, base + 2 * t, base + 4 * t - 1)
    return gens, 2 * t - 1


def bresinsky_family(d: int) -> ParametricFamily:
    if d < 2 or d % 2 != 0:
        raise OddDegreeError("the family needs an even degree d >= 2")
    h = d // 2
    polys = [
        PolynomialZ.monomial(4, d) + PolynomialZ.monomial(-2, h),
        PolynomialZ.monomial(4, d) + PolynomialZ.constant(-1),
        PolynomialZ.monomial(4, d) + PolynomialZ.monomial(2, h),
        PolynomialZ.monomial(4, d) + PolynomialZ.monomial(4, h) + PolynomialZ.constant(-1),
    ]
    return family_from_polys(polys, label=f"bresinsky-d{d}")


@dataclass
class BresinskyReport:
    d: int
    n: int
    gens: tuple[int, int, int, int]
    step: int  # M
    mu_count: int  # 2 n^(d/2) disconnected degrees
    degrees: tuple[int, ...]
    beta1_lower_bound: int
    beta1: Optional[int] = None
    beta1_complete: bool = False

    @property
    def ok(self) -> bool:
        return self.beta1 is None or self.beta1 >= self.beta1_lower_bound


_BETA1_AUTO_LIMIT = 5 * 10**6


def verify_bresinsky(d: int, n: int, compute_beta1: Optional[bool] = None) -> BresinskyReport:
    """Check the structural facts behind the unbounded first Betti number.

    For each mu in [1, 2 n^(d/2)]: the two stated representations of f(mu)
    agree; consecutive degrees drop by M; the divisor complex at f(mu) is
    disconnected, splitting between the {a1,a2} side and the {a3,a4} side
    (no mixed pair is a face); the side edges are faces away from the
    endpoint mu values.  Optionally cross-checks the complete first Betti
    number against the 2 n^(d/2) lower bound.
    """
    if n < 2:
        raise ValueError("n must be >= 2 (the congruence argument needs M > 1)")
    gens, step = bresinsky_generators(d, n)
    a1, a2, a3, a4 = gens
    t2 = step + 1  # 2 n^(d/2)
    view = numsg.build(gens)
    degrees = []
    prev = None
    for mu in range(1, t2 + 1):
        f_mu = (mu + 1) * a1 + (t2 - mu) * a2
        other = (mu - 1) * a3 + (t2 - mu) * a4
        if f_mu != other:
            raise VerificationError(
                f"representations disagree at mu={mu}: {f_mu} vs {other}"
            )
        if prev is not None and prev - f_mu != step:
            raise VerificationError(
                f"degree step at mu={mu}: {prev} - {f_mu} != {step}"
            )
        prev = f_mu
        degrees.append(f_mu)
        for r in (0, 1):
            for s in (2, 3):
                if view.contains(f_mu - gens[r] - gens[s]):
                    raise VerificationError(
                        f"mixed pair face at mu={mu}, r={r + 1}, s={s + 1}"
                    )
        left = view.contains(f_mu - a1) or view.contains(f_mu - a2)
        right = view.contains(f_mu - a3) or view.contains(f_mu - a4)
        if not (left and right):
            raise VerificationError(f"side vertex missing at mu={mu}")
        if mu <= t2 - 1 and not view.contains(f_mu - a1 - a2):
            raise VerificationError(f"edge {{1,2}} missing at mu={mu}")
        if 2 <= mu <= t2 - 1 and not view.contains(f_mu - a3 - a4):
            raise VerificationError(f"edge {{3,4}} missing at mu={mu}")
        complex_ = sq_divisor_complex(gens, f_mu, lambda v: view.contains(v[0]))
        if complex_.connected_components() < 2:
            raise VerificationError(f"divisor complex connected at mu={mu}")
    report = BresinskyReport(
        d=d,
        n=n,
        gens=gens,
        step=step,
        mu_count=t2,
        degrees=tuple(degrees),
        beta1_lower_bound=t2,
    )
    if compute_beta1 is None:
        compute_beta1 = view.frobenius <= _BETA1_AUTO_LIMIT
    if compute_beta1:
        beta1, complete = coarse_betti(gens, 1)
        report.beta1 = beta1
        report.beta1_complete = complete
        if beta1 < t2:
            raise VerificationError(
                f"first Betti number {beta1} below the bound {t2} at n={n}"
            )
    return report


# ---------------------------------------------------------------------------
# degree-bound checks
# ---------------------------------------------------------------------------


def check_degree_bounds(fam: ParametricFamily, i: int, fitted, series=None) -> dict:
    """Check the fitted quasi-polynomial degree against the generator-degree
    bounds, and (for i = 1, when samples are supplied) the per-n cardinality
    bound (2 a1 - k + 1)(k - 2)/2 + 1 on minimal presentation sizes.
    """
    if fam.ambient_dim != 1:
        raise ValueError("degree bounds are stated for dimension one")
    report = {
        "i": i,
        "fitted_degree": fitted.degree,
        "sum_degree_bound": fam.degree_sum(),
        "min_degree_bound": fam.min_degree() if i == 1 else None,
        "cardinality_bound_checked": 0,
    }
    if fitted.degree > fam.degree_sum():
        raise BoundViolationError(
            f"fitted degree {fitted.degree} exceeds the generator-degree sum "
            f"{fam.degree_sum()}"
        )
    if i == 1 and fitted.degree > fam.min_degree():
        raise BoundViolationError(
            f"fitted degree {fitted.degree} exceeds the smallest generator degree "
            f"{fam.min_degree()}"
        )
    if i == 1 and series is not None:
        from .polyfam import instantiate_scalars

        checked = 0
        for n in sorted(series.values):
            beta = series.values[n]
            scalars = sorted(instantiate_scalars(fam, n))
            k = len(scalars)
            if k < 2:
                continue
            bound = (2 * scalars[0] - k + 1) * (k - 2) // 2 + 1
            if beta > bound:
                raise BoundViolationError(
                    f"beta_1 = {beta} exceeds the cardinality bound {bound} at n={n}"
                )
            checked += 1
        report["cardinality_bound_checked"] = checked
    return report
