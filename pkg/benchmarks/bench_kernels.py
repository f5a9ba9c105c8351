#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure Python/numpy fallback.

Runs each hot kernel on a small and a large workload and prints a table
with per-backend timings and the speedup.  The extension must be built
(pip install -e . does it) or only the fallback column appears.
"""
import time

import numpy as np

from eqpsg import _fallback

try:
    from eqpsg import _speedups
except ImportError:
    _speedups = None


def _time(fn, *args, repeat=3):
    best = None
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, value


def _norm(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def main():
    n_small, n_big = 40, 170
    workloads = []
    for label, n in (("small", n_small), ("big", n_big)):
        gens = (n * n + 1, n * n + n + 1, n * n + 2 * n + 3)
        size = 80_000 if n == n_small else 10_000_000
        workloads.append((f"member_table {label} (B={size})", "member_table", (gens, size)))
    table_small = _fallback.member_table((1601, 1641, 1683), 80_000)
    table_big = _fallback.member_table((28901, 29071, 29243), 9_768_197)
    workloads.append(
        ("betti1_scan small", "betti1_scan", (table_small, 55_000, (1601, 1641, 1683)))
    )
    workloads.append(
        ("betti1_scan big", "betti1_scan", (table_big, 9_768_195, (28901, 29071, 29243)))
    )
    workloads.append(
        ("delta_scan_u64 small", "delta_scan_u64", ((1601, 1641, 1683), 400_000))
    )
    workloads.append(
        ("delta_scan_u64 big", "delta_scan_u64", ((28901, 29071, 29243), 20_000_000))
    )

    print(f"{'workload':38} {'pure':>10} {'ext':>10} {'speedup':>8}")
    for label, name, args in workloads:
        t_pure, v_pure = _time(getattr(_fallback, name), *args)
        if _speedups is not None:
            t_ext, v_ext = _time(getattr(_speedups, name), *args)
            agree = _norm(v_pure) == _norm(v_ext)
            ratio = t_pure / t_ext if t_ext > 0 else float("inf")
            flag = "" if agree else "  RESULTS DISAGREE"
            print(f"{label:38} {t_pure:9.4f}s {t_ext:9.4f}s {ratio:7.1f}x{flag}")
        else:
            print(f"{label:38} {t_pure:9.4f}s {'n/a':>10} {'':>8}")


if __name__ == "__main__":
    main()
