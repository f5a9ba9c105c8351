"""Pure Python / numpy implementations of the hot kernels.

Used when the compiled extension is unavailable (or forced via
EQPSG_BACKEND=pure).  Same contracts as eqpsg._speedups.
"""
from __future__ import annotations

import numpy as np


def member_table(gens, size: int) -> np.ndarray:
    """uint8 table over [0, size): table[t] = 1 iff t is an N-combination of gens.

    The unbounded-coin closure is taken per generator by shift doubling on a
    Python bignum (bit t set <=> t representable), which keeps the dynamic
    program in C-speed bignum ops.
    """
    if size <= 0:
        return np.zeros(0, dtype=np.uint8)
    full = (1 << size) - 1
    mask = 1
    for g in sorted(set(int(g) for g in gens)):
        if g <= 0:
            raise ValueError("generators must be positive")
        if g >= size:
            continue
        shift = g
        while shift < size:
            mask |= (mask << shift) & full
            shift <<= 1
    nbytes = (size + 7) // 8
    buf = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(buf, bitorder="little")[:size].copy()


def _member_ext(table: np.ndarray, frob: int, limit: int) -> np.ndarray:
    """Membership over [0, limit]: the table padded with ones past frob."""
    ext = np.ones(limit + 1, dtype=np.uint8)
    upto = min(frob, limit)
    ext[: upto + 1] = table[: upto + 1]
    return ext


_COMP_CACHE: dict[tuple[int, int, int], int] = {}


def _components_minus_one(k: int, vmask: int, emask: int) -> int:
    key = (k, vmask, emask)
    hit = _COMP_CACHE.get(key)
    if hit is not None:
        return hit
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pidx = 0
    for i in range(k):
        for j in range(i + 1, k):
            if (emask >> pidx) & 1 and (vmask >> i) & 1 and (vmask >> j) & 1:
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[ra] = rb
            pidx += 1
    roots = {find(i) for i in range(k) if (vmask >> i) & 1}
    out = max(len(roots) - 1, 0)
    _COMP_CACHE[key] = out
    return out


def betti1_scan(table: np.ndarray, frob: int, gens) -> int:
    """Sum over lam in S of (components of the squarefree divisor complex - 1).

    Complete for the first Betti number: past frob plus the two largest
    generators the complex is the full simplex skeleton in dimension <= 1,
    hence connected.
    """
    gens = [int(g) for g in gens]
    k = len(gens)
    if k < 2:
        return 0
    srt = sorted(gens)
    limit = frob + srt[-1] + srt[-2]
    if limit < 1:
        return 0
    ext = _member_ext(table, frob, limit)

    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    total = 0
    chunk = 1 << 20
    for lo in range(1, limit + 1, chunk):
        hi = min(lo + chunk, limit + 1)
        lam = np.arange(lo, hi, dtype=np.int64)
        in_s = ext[lam].astype(bool)
        code = np.zeros(hi - lo, dtype=np.int64)
        for i, g in enumerate(gens):
            idx = lam - g
            ok = idx >= 0
            bit = np.zeros(hi - lo, dtype=bool)
            bit[ok] = ext[idx[ok]].astype(bool)
            code |= bit.astype(np.int64) << i
        for p, (i, j) in enumerate(pairs):
            idx = lam - gens[i] - gens[j]
            ok = idx >= 0
            bit = np.zeros(hi - lo, dtype=bool)
            bit[ok] = ext[idx[ok]].astype(bool)
            code |= bit.astype(np.int64) << (k + p)
        codes = code[in_s]
        if codes.size == 0:
            continue
        uniq, counts = np.unique(codes, return_counts=True)
        for u, c in zip(uniq.tolist(), counts.tolist()):
            vmask = u & ((1 << k) - 1)
            emask = u >> k
            total += c * _components_minus_one(k, vmask, emask)
    return total


def _deltas_of_mask(mask: int) -> list[int]:
    out = []
    prev = None
    bit = 0
    while mask:
        if mask & 1:
            if prev is not None:
                out.append(bit - prev)
            prev = bit
        mask >>= 1
        bit += 1
    return out


def delta_scan_bigint(gens, bound: int) -> list[int]:
    """Reference windowed scan: per element, the set of factorization lengths
    as a bignum bitmask relative to the minimum length.  Any mask width.
    """
    gens = sorted(set(int(g) for g in gens))
    if bound < 0 or not gens:
        return []
    ring = gens[-1]
    lo_ring = [-1] * ring
    mask_ring = [0] * ring
    deltas: set[int] = set()
    cache: dict[int, tuple[int, ...]] = {}
    for m in range(0, bound + 1):
        if m == 0:
            new_lo, new_mask = 0, 1
        else:
            new_lo = -1
            new_mask = 0
            for g in gens:
                pm = m - g
                if pm < 0:
                    continue
                if pm == 0:
                    cl = 1
                    cm = 1
                else:
                    slot = pm % ring
                    if lo_ring[slot] < 0:
                        continue
                    cl = lo_ring[slot] + 1
                    cm = mask_ring[slot]
                if new_lo < 0:
                    new_lo, new_mask = cl, cm
                elif cl >= new_lo:
                    new_mask |= cm << (cl - new_lo)
                else:
                    new_mask = (new_mask << (new_lo - cl)) | cm
                    new_lo = cl
        slot = m % ring
        lo_ring[slot] = new_lo
        mask_ring[slot] = new_mask
        if new_lo >= 0 and new_mask & (new_mask - 1):
            norm = new_mask >> ((new_mask & -new_mask).bit_length() - 1)
            ds = cache.get(norm)
            if ds is None:
                ds = tuple(_deltas_of_mask(norm))
                cache[norm] = ds
            deltas.update(ds)
    return sorted(deltas)


def delta_scan_u64(gens, bound: int) -> list[int]:
    """Windowed scan vectorised over blocks of the smallest generator.

    Only valid when every length set within the bound spans < 62 lengths;
    the dispatcher guarantees that.  Window invariant at the top of each
    iteration: position p of the arrays holds element start - ak + p for
    p in [0, ak); a block never depends on itself because the block size
    is at most the smallest generator.
    """
    gens = sorted(set(int(g) for g in gens))
    if bound < 0 or not gens:
        return []
    a1, ak = gens[0], gens[-1]
    width = ak + a1
    lo = np.full(width, -1, dtype=np.int64)
    mask = np.zeros(width, dtype=np.uint64)
    deltas: set[int] = set()
    cache: dict[int, tuple[int, ...]] = {}
    big = np.int64(2**62)

    start = 0
    while start <= bound:
        blk = min(a1, bound - start + 1)
        new_lo = np.full(blk, big, dtype=np.int64)
        new_mask = np.zeros(blk, dtype=np.uint64)
        for g in gens:
            off = ak - g  # element start + i - g sits at position ak + i - g
            src_lo = lo[off : off + blk]
            src_mask = mask[off : off + blk]
            valid = src_lo >= 0
            cand_lo = np.where(valid, src_lo + 1, big)
            better = cand_lo < new_lo
            shift_up = np.where(better & (new_lo < big), new_lo - cand_lo, 0)
            new_mask = np.left_shift(new_mask, shift_up.astype(np.uint64))
            new_lo = np.where(better, cand_lo, new_lo)
            shift = np.where(valid, cand_lo - new_lo, 0)
            add = np.where(valid, np.left_shift(src_mask, shift.astype(np.uint64)), np.uint64(0))
            new_mask |= add
        if start == 0:
            new_lo[0] = 0
            new_mask[0] = np.uint64(1)
        new_lo = np.where(new_lo >= big, np.int64(-1), new_lo)
        new_mask = np.where(new_lo < 0, np.uint64(0), new_mask)
        multi = new_mask[(new_mask & (new_mask - np.uint64(1))) != 0]
        if multi.size:
            lowbit = multi & (np.uint64(0) - multi)
            norm = multi // lowbit
            for u in np.unique(norm).tolist():
                ds = cache.get(u)
                if ds is None:
                    ds = tuple(_deltas_of_mask(int(u)))
                    cache[u] = ds
                deltas.update(ds)
        lo[ak : ak + blk] = new_lo
        mask[ak : ak + blk] = new_mask
        lo[:ak] = lo[blk : blk + ak].copy()
        mask[:ak] = mask[blk : blk + ak].copy()
        start += blk
    return sorted(deltas)
