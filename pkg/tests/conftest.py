"""Shared brute-force oracles, deliberately independent of the library's
table/kernel machinery: plain set arithmetic and exhaustive search only."""
from __future__ import annotations

import math
from itertools import combinations, product

import pytest


def brute_members(gens, limit):
    """All semigroup elements in [0, limit] by breadth-first closure."""
    members = {0}
    frontier = [0]
    while frontier:
        base = frontier.pop()
        for g in gens:
            t = base + g
            if t <= limit and t not in members:
                members.add(t)
                frontier.append(t)
    return members


def brute_frobenius(gens):
    """None when gcd > 1; -1 when 1 is generated; else max non-member."""
    d = 0
    for g in gens:
        d = math.gcd(d, g)
    if d > 1:
        return None
    lim = max(gens) ** 2 + max(gens)  # generous: two smallest coprime bound it
    if len(gens) >= 2:
        lim = sorted(gens)[0] * sorted(gens)[1] + max(gens)
    members = brute_members(gens, lim)
    gaps = [t for t in range(lim + 1) if t not in members]
    return max(gaps) if gaps else -1


def brute_gaps(gens):
    frob = brute_frobenius(gens)
    assert frob is not None
    members = brute_members(gens, max(frob, 0))
    return [t for t in range(frob + 1) if t not in members]


def brute_apery(gens, x):
    frob = brute_frobenius(gens)
    members = brute_members(gens, max(frob, 0) + x)
    out = []
    for r in range(x):
        t = r
        while t not in members:
            t += x
        out.append(t)
    return sorted(out)


def brute_pseudo_frobenius(gens):
    """Definitional: gaps x with x + s a member for every nonzero member s."""
    frob = brute_frobenius(gens)
    if frob == -1:
        return [-1]
    limit = 2 * frob + 2 * max(gens) + 2
    members = brute_members(gens, limit)
    small_members = [s for s in sorted(members) if 0 < s <= frob + 1]
    out = []
    for x in brute_gaps(gens):
        if all(x + s in members or x + s > frob for s in small_members):
            out.append(x)
    return out


def brute_factorizations(gens, m):
    k = len(gens)
    ranges = [range(m // g + 1) for g in gens]
    return sorted(
        (z for z in product(*ranges) if sum(a * b for a, b in zip(z, gens)) == m),
        key=lambda t: t[::-1],
    )


def brute_length_set(gens, m):
    return sorted({sum(z) for z in brute_factorizations(gens, m)})


def brute_delta_of_element(gens, m):
    ls = brute_length_set(gens, m)
    return sorted({b - a for a, b in zip(ls, ls[1:])})


def brute_delta_of_semigroup(gens, bound):
    out = set()
    for m in range(bound + 1):
        out.update(brute_delta_of_element(gens, m))
    return sorted(out)


def brute_divisor_faces(gens, lam, members):
    """Faces of the divisor complex as 1-based index sets; membership given
    as a set that must cover [0, lam]."""
    k = len(gens)
    faces = []
    for r in range(k + 1):
        for sub in combinations(range(k), r):
            rest = lam - sum(gens[i] for i in sub)
            if rest >= 0 and rest in members:
                faces.append(frozenset(i + 1 for i in sub))
    return frozenset(faces)


SMALL_SEMIGROUPS = [
    (2, 3),
    (3, 5, 7),
    (3, 4),
    (6, 9, 20),
    (5, 7, 9),
    (4, 6, 9),
    (12, 15, 20, 23),
    (5, 8, 11, 14),
    (7, 10, 13),
    (1,),
    (2, 7),
]


@pytest.fixture(scope="session")
def small_semigroups():
    return SMALL_SEMIGROUPS
