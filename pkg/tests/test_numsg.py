from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqpsg import numsg
from eqpsg.errors import NotMemberError, NotNumericalError

from conftest import (
    brute_apery,
    brute_frobenius,
    brute_gaps,
    brute_members,
    brute_pseudo_frobenius,
    SMALL_SEMIGROUPS,
)


def test_build_357():
    v = numsg.build([3, 5, 7])
    assert v.gcd_d == 1 and v.frobenius == 4
    table = v.membership_table()
    assert sorted(np.flatnonzero(~table)) == [1, 2, 4]
    assert numsg.genus(v) == 3


def test_build_23_and_gcd2():
    v = numsg.build([2, 3])
    assert v.frobenius == 1 and brute_gaps([2, 3]) == [1]
    v46 = numsg.build([4, 6])
    assert not v46.is_numerical and v46.gcd_d == 2
    assert v46.frobenius is None
    assert v46.contains(10) and not v46.contains(8 + 1)
    with pytest.raises(NotNumericalError):
        numsg.genus(v46)


def test_natural_numbers_conventions():
    v = numsg.build([1])
    assert v.frobenius == -1
    assert numsg.genus(v) == 0
    assert numsg.semigroup_type(v) == 1
    assert numsg.pseudo_frobenius(v) == (-1,)
    assert numsg.is_symmetric(v)
    assert not numsg.is_irreducible(v)


def test_apery_examples():
    assert numsg.apery_set(numsg.build([3, 5, 7]), 3) == (0, 5, 7)
    assert numsg.apery_set(numsg.build([2, 3]), 2) == (0, 3)
    assert numsg.apery_set(numsg.build([1]), 1) == (0,)
    with pytest.raises(NotMemberError):
        numsg.apery_set(numsg.build([3, 5, 7]), 4)


def test_ith_apery_element():
    v = numsg.build([3, 5, 7])
    assert numsg.ith_apery_element(v, 1) == 0
    assert numsg.ith_apery_element(v, 2) == 5
    assert numsg.ith_apery_element(numsg.build([2, 3]), 2) == 3
    with pytest.raises(IndexError):
        numsg.ith_apery_element(v, 4)


def test_pseudo_frobenius_and_type():
    assert numsg.pseudo_frobenius(numsg.build([3, 5, 7])) == (2, 4)
    assert numsg.semigroup_type(numsg.build([3, 5, 7])) == 2
    assert numsg.pseudo_frobenius(numsg.build([2, 3])) == (1,)


def test_frobenius_always_pseudo_frobenius():
    for gens in SMALL_SEMIGROUPS:
        v = numsg.build(gens)
        if v.is_numerical and v.frobenius >= 0:
            assert v.frobenius in numsg.pseudo_frobenius(v)


def test_symmetry_classifications():
    assert numsg.is_symmetric(numsg.build([2, 3]))
    assert not numsg.is_symmetric(numsg.build([3, 5, 7]))
    assert numsg.is_symmetric(numsg.build([3, 4]))  # oracle: gaps 1,2,5 reflect
    v = numsg.build([3, 5, 7])
    assert numsg.is_pseudo_symmetric(v) and numsg.is_irreducible(v)
    assert numsg.is_irreducible(numsg.build([2, 3]))


def test_fundamental_gaps_oracle_decides():
    # brute force: x is fundamental iff x is a gap with 2x and 3x members
    for gens in [(3, 5, 7), (2, 3), (6, 9, 20), (3, 4)]:
        frob = brute_frobenius(gens)
        members = brute_members(gens, 3 * max(frob, 0) + 1)
        expected = tuple(
            x for x in brute_gaps(gens) if 2 * x in members and 3 * x in members
        )
        assert numsg.fundamental_gaps(numsg.build(gens)) == expected
    assert numsg.fundamental_gaps(numsg.build([3, 5, 7])) == (4,)
    assert numsg.fundamental_gaps(numsg.build([2, 3])) == (1,)
    assert numsg.fundamental_gaps(numsg.build([1])) == ()


def test_membership_matches_oracle_on_corpus():
    for gens in SMALL_SEMIGROUPS:
        v = numsg.build(gens)
        limit = 4 * max(gens) + 20
        members = brute_members(gens, limit)
        got = {t for t in range(limit + 1) if v.contains(t)}
        assert got == members, gens
        arr = np.arange(-3, limit + 1)
        assert (v.members_at(arr) == np.array([t in members and t >= 0 for t in arr])).all()


def test_view_invariants_against_oracle():
    for gens in SMALL_SEMIGROUPS:
        v = numsg.build(gens)
        frob = brute_frobenius(gens)
        if frob is None:
            assert not v.is_numerical
            continue
        assert v.frobenius == frob
        assert numsg.genus(v) == len(brute_gaps(gens))
        assert list(numsg.pseudo_frobenius(v)) == brute_pseudo_frobenius(gens)
        for x in gens[:2]:
            assert list(numsg.apery_set(v, x)) == brute_apery(gens, x)


gens_strategy = st.lists(
    st.integers(min_value=1, max_value=40), min_size=1, max_size=4
)


@settings(max_examples=60, deadline=None)
@given(gens_strategy)
def test_membership_table_matches_oracle(gens):
    v = numsg.build(gens)
    table = v.membership_table()
    members = brute_members(gens, v.table_bound)
    assert {int(t) for t in np.flatnonzero(table)} == members
    if v.is_numerical:
        # the table is exactly long enough to expose the Frobenius number
        falses = np.flatnonzero(~table)
        if v.frobenius >= 0:
            assert falses[-1] == v.frobenius
        else:
            assert falses.size == 0


@settings(max_examples=40, deadline=None)
@given(gens_strategy)
def test_apery_and_selmer_identities(gens):
    v = numsg.build(gens)
    if not v.is_numerical:
        return
    for x in sorted(set(gens))[:2]:
        ap = numsg.apery_set(v, x)
        assert len(ap) == x
        assert v.frobenius == max(ap) - x
        # Selmer: genus = (sum of Apery elements)/x - (x-1)/2, exactly
        assert Fraction(sum(ap), x) - Fraction(x - 1, 2) == numsg.genus(v)


@settings(max_examples=40, deadline=None)
@given(gens_strategy)
def test_symmetric_iff_type_one(gens):
    v = numsg.build(gens)
    if not v.is_numerical:
        return
    assert numsg.is_symmetric(v) == (numsg.semigroup_type(v) == 1)
    # genus identities for the reflection classes
    if v.frobenius >= 0:
        if numsg.is_symmetric(v):
            assert 2 * numsg.genus(v) == v.frobenius + 1
        if numsg.is_pseudo_symmetric(v):
            assert 2 * numsg.genus(v) == v.frobenius + 2


def test_large_build_is_exact():
    n = 120
    gens = [n * n + 1, n * n + n + 1, n * n + 2 * n + 3]
    v = numsg.build(gens)
    # spot-check the Frobenius number: everything above is a member,
    # the Frobenius number itself is not
    assert not v.contains(v.frobenius)
    assert all(v.contains(v.frobenius + j) for j in range(1, 2 * gens[0], max(1, gens[0] // 7)))
    ap = numsg.apery_set(v, v.multiplicity)
    assert max(ap) - v.multiplicity == v.frobenius
