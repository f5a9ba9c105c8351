"""Backend agreement: the compiled kernels and the pure fallback must be
indistinguishable, and both must match brute force."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqpsg import _fallback, _kernels
from eqpsg import numsg

from conftest import brute_delta_of_semigroup, brute_members

try:
    from eqpsg import _speedups
except ImportError:
    _speedups = None

needs_ext = pytest.mark.skipif(_speedups is None, reason="extension not built")

gens_strategy = st.lists(st.integers(min_value=1, max_value=30), min_size=1, max_size=4)


@settings(max_examples=50, deadline=None)
@given(gens_strategy, st.integers(min_value=1, max_value=300))
def test_member_table_matches_brute(gens, size):
    table = _kernels.member_table(gens, size)
    members = brute_members(gens, size - 1)
    assert {int(t) for t in np.flatnonzero(table)} == members


@needs_ext
@settings(max_examples=40, deadline=None)
@given(gens_strategy, st.integers(min_value=1, max_value=400))
def test_member_table_backends_agree(gens, size):
    assert _speedups.member_table(gens, size).tolist() == _fallback.member_table(gens, size).tolist()


def _slow_betti1(gens):
    """Independent route: sum of (components - 1) via the homology module's
    complex construction, not the scan kernels."""
    from eqpsg.homology import sq_divisor_complex

    view = numsg.build(gens)
    srt = sorted(view.gens)
    limit = view.frobenius + srt[-1] + srt[-2]
    member = lambda vec: view.contains(vec[0])
    total = 0
    for lam in range(1, limit + 1):
        if not view.contains(lam):
            continue
        c = sq_divisor_complex(list(view.gens), lam, member)
        if c.vertices():
            total += c.connected_components() - 1
    return total


@pytest.mark.parametrize(
    "gens", [(2, 3), (3, 5, 7), (6, 9, 20), (12, 15, 20, 23), (1, 2), (4, 6, 9), (5, 5, 8)]
)
def test_betti1_scan_matches_slow_route(gens):
    view = numsg.build(gens)
    expected = _slow_betti1(gens)
    assert _fallback.betti1_scan(view._red_table, view.frobenius, sorted(view.gens)) == expected
    if _speedups is not None:
        assert _speedups.betti1_scan(view._red_table, view.frobenius, sorted(view.gens)) == expected


delta_gens = st.lists(st.integers(min_value=2, max_value=22), min_size=2, max_size=4)


@settings(max_examples=30, deadline=None)
@given(delta_gens, st.integers(min_value=0, max_value=120))
def test_delta_scan_paths_agree_with_brute(gens, bound):
    import math

    d = 0
    for g in gens:
        d = math.gcd(d, g)
    if d != 1:
        return
    expected = brute_delta_of_semigroup(tuple(gens), bound)
    assert _fallback.delta_scan_bigint(gens, bound) == expected
    span = _kernels.length_span(gens, bound)
    if span <= 60:
        assert _fallback.delta_scan_u64(gens, bound) == expected
        if _speedups is not None:
            assert _speedups.delta_scan_u64(gens, bound) == expected
    if _speedups is not None:
        words = (span + 63) // 64 + 1
        assert _speedups.delta_scan_words(gens, bound, words) == expected
    assert _kernels.delta_scan(gens, bound) == expected


def test_delta_scan_wide_masks():
    # (6,9,20) to its repetition onset needs ~280-bit masks: multi-word path
    gens = (6, 9, 20)
    bound = 2 * 3 * 20 * 20
    expected = _fallback.delta_scan_bigint(gens, bound)
    assert _kernels.delta_scan(gens, bound) == expected
    if _speedups is not None:
        span = _kernels.length_span(gens, bound)
        assert _speedups.delta_scan_words(gens, bound, (span + 63) // 64 + 1) == expected


def test_delta_scan_u64_blocked_window_long_run():
    # exercise several block slides (bound >> smallest generator)
    gens = (23, 29, 44)
    bound = 2000
    assert _fallback.delta_scan_u64(gens, bound) == _fallback.delta_scan_bigint(gens, bound)


@needs_ext
def test_big_workload_backends_agree():
    n = 60
    gens = (n * n + 1, n * n + n + 1, n * n + 2 * n + 3)
    view = numsg.build(gens)
    f = view.frobenius
    a = _fallback.betti1_scan(view._red_table, f, sorted(gens))
    b = _speedups.betti1_scan(view._red_table, f, sorted(gens))
    assert a == b
    bound = 4 * (f + 2 * max(gens))
    assert _fallback.delta_scan_u64(gens, bound) == _speedups.delta_scan_u64(gens, bound)
