# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: membership dynamic program, first-Betti component scan,
and the windowed length-set scan behind semigroup delta sets.

Mirrors eqpsg._fallback; the dispatcher in eqpsg._kernels picks whichever
is importable.
"""
import numpy as np

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset


def member_table(gens, Py_ssize_t size):
    """uint8 table over [0, size): table[t] = 1 iff t is an N-combination of gens."""
    arr = np.zeros(max(size, 0), dtype=np.uint8)
    if size <= 0:
        return arr
    cdef unsigned char[::1] tab = arr
    gl = sorted(set(int(g) for g in gens))
    cdef Py_ssize_t k = len(gl)
    cdef long long* g = <long long*> malloc(k * sizeof(long long))
    if g == NULL:
        raise MemoryError()
    cdef Py_ssize_t j
    for j in range(k):
        if gl[j] <= 0:
            free(g)
            raise ValueError("generators must be positive")
        g[j] = gl[j]
    cdef Py_ssize_t t
    with nogil:
        tab[0] = 1
        for t in range(1, size):
            for j in range(k):
                if t >= g[j] and tab[t - g[j]]:
                    tab[t] = 1
                    break
    free(g)
    return arr


cdef inline int _member(const unsigned char* tab, long long frob, long long t) nogil:
    if t < 0:
        return 0
    if t > frob:
        return 1
    return tab[t]


def betti1_scan(unsigned char[::1] table, long long frob, gens):
    """Sum over lam in S of (number of components of the divisor complex - 1).

    Scans lam up to frob plus the two largest generators, past which the
    1-skeleton is complete and contributes nothing.
    """
    gl = [int(x) for x in gens]
    cdef Py_ssize_t k = len(gl)
    if k < 2:
        return 0
    if k > 64:
        raise ValueError("too many generators for the component scan")
    srt = sorted(gl)
    cdef long long limit = frob + srt[k - 1] + srt[k - 2]
    if limit < 1:
        return 0
    cdef long long* g = <long long*> malloc(k * sizeof(long long))
    cdef int* parent = <int*> malloc(k * sizeof(int))
    cdef int* present = <int*> malloc(k * sizeof(int))
    if g == NULL or parent == NULL or present == NULL:
        free(g); free(parent); free(present)
        raise MemoryError()
    cdef Py_ssize_t i, j2
    for i in range(k):
        g[i] = gl[i]
    cdef const unsigned char* tab = &table[0]
    cdef long long lam, total = 0
    cdef int ri, rj, comp
    with nogil:
        for lam in range(1, limit + 1):
            if not _member(tab, frob, lam):
                continue
            comp = 0
            for i in range(k):
                present[i] = _member(tab, frob, lam - g[i])
                parent[i] = <int> i
                comp += present[i]
            if comp <= 1:
                continue
            for i in range(k):
                if not present[i]:
                    continue
                for j2 in range(i + 1, k):
                    if not present[j2]:
                        continue
                    if _member(tab, frob, lam - g[i] - g[j2]):
                        ri = <int> i
                        while parent[ri] != ri:
                            parent[ri] = parent[parent[ri]]
                            ri = parent[ri]
                        rj = <int> j2
                        while parent[rj] != rj:
                            parent[rj] = parent[parent[rj]]
                            rj = parent[rj]
                        if ri != rj:
                            parent[ri] = rj
                            comp -= 1
            total += comp - 1
    free(g); free(parent); free(present)
    return total


def delta_scan_u64(gens, long long bound):
    """Windowed length-set scan with single-word masks (span < 62 lengths)."""
    gl = sorted(set(int(x) for x in gens))
    if bound < 0 or not gl:
        return []
    cdef Py_ssize_t k = len(gl)
    cdef long long ak = gl[k - 1]
    cdef long long* g = <long long*> malloc(k * sizeof(long long))
    cdef long long* lo = <long long*> malloc(ak * sizeof(long long))
    cdef unsigned long long* mask = <unsigned long long*> malloc(ak * sizeof(unsigned long long))
    cdef unsigned char* seen = <unsigned char*> calloc(64, 1)
    if g == NULL or lo == NULL or mask == NULL or seen == NULL:
        free(g); free(lo); free(mask); free(seen)
        raise MemoryError()
    cdef Py_ssize_t j
    for j in range(k):
        g[j] = gl[j]
    cdef long long m, pm, slot, cl, nl
    cdef unsigned long long nm, cm, rest
    cdef int bit, prev
    with nogil:
        for m in range(ak):
            lo[m] = -1
            mask[m] = 0
        for m in range(0, bound + 1):
            if m == 0:
                nl = 0
                nm = 1
            else:
                nl = -1
                nm = 0
                for j in range(k):
                    pm = m - g[j]
                    if pm < 0:
                        continue
                    slot = pm % ak
                    if lo[slot] < 0:
                        continue
                    cl = lo[slot] + 1
                    cm = mask[slot]
                    if nl < 0:
                        nl = cl
                        nm = cm
                    elif cl >= nl:
                        nm |= cm << (cl - nl)
                    else:
                        nm = (nm << (nl - cl)) | cm
                        nl = cl
            slot = m % ak
            lo[slot] = nl
            mask[slot] = nm
            if nl >= 0 and (nm & (nm - 1)) != 0:
                rest = nm
                prev = -1
                bit = 0
                while rest != 0:
                    if rest & 1:
                        if prev >= 0:
                            seen[bit - prev] = 1
                        prev = bit
                    rest >>= 1
                    bit += 1
    out = [b for b in range(64) if seen[b]]
    free(g); free(lo); free(mask); free(seen)
    return out


def delta_scan_words(gens, long long bound, Py_ssize_t words):
    """Windowed length-set scan with multi-word masks (span < 64*words)."""
    gl = sorted(set(int(x) for x in gens))
    if bound < 0 or not gl:
        return []
    cdef Py_ssize_t k = len(gl)
    cdef long long ak = gl[k - 1]
    cdef Py_ssize_t W = words
    cdef long long* g = <long long*> malloc(k * sizeof(long long))
    cdef long long* lo = <long long*> malloc(ak * sizeof(long long))
    cdef unsigned long long* mask = <unsigned long long*> calloc(ak * W, sizeof(unsigned long long))
    cdef unsigned long long* acc = <unsigned long long*> malloc(W * sizeof(unsigned long long))
    cdef unsigned char* seen = <unsigned char*> calloc(64 * W, 1)
    if g == NULL or lo == NULL or mask == NULL or acc == NULL or seen == NULL:
        free(g); free(lo); free(mask); free(acc); free(seen)
        raise MemoryError()
    cdef Py_ssize_t j, w
    for j in range(k):
        g[j] = gl[j]
    cdef long long m, pm, slot, cl, nl, sh, wsh, bsh
    cdef unsigned long long v
    cdef long long bit, prev
    with nogil:
        for m in range(ak):
            lo[m] = -1
        for m in range(0, bound + 1):
            for w in range(W):
                acc[w] = 0
            if m == 0:
                nl = 0
                acc[0] = 1
            else:
                nl = -1
                for j in range(k):
                    pm = m - g[j]
                    if pm < 0:
                        continue
                    slot = pm % ak
                    if lo[slot] < 0:
                        continue
                    cl = lo[slot] + 1
                    if nl < 0 or cl < nl:
                        if nl >= 0:
                            # shift existing acc up by nl - cl
                            sh = nl - cl
                            wsh = sh >> 6
                            bsh = sh & 63
                            for w in range(W - 1, -1, -1):
                                v = 0
                                if w - wsh >= 0:
                                    v = acc[w - wsh] << bsh
                                    if bsh != 0 and w - wsh - 1 >= 0:
                                        v |= acc[w - wsh - 1] >> (64 - bsh)
                                acc[w] = v
                        nl = cl
                    # or in the candidate shifted by cl - nl
                    sh = cl - nl
                    wsh = sh >> 6
                    bsh = sh & 63
                    for w in range(W - 1, -1, -1):
                        v = 0
                        if w - wsh >= 0:
                            v = mask[slot * W + (w - wsh)] << bsh
                            if bsh != 0 and w - wsh - 1 >= 0:
                                v |= mask[slot * W + (w - wsh - 1)] >> (64 - bsh)
                        acc[w] |= v
            slot = m % ak
            lo[slot] = nl
            for w in range(W):
                mask[slot * W + w] = acc[w]
            if nl >= 0:
                prev = -1
                for w in range(W):
                    v = acc[w]
                    bit = w << 6
                    while v != 0:
                        if v & 1:
                            if prev >= 0:
                                seen[bit - prev] = 1
                            prev = bit
                        v >>= 1
                        bit += 1
    out = [b for b in range(64 * W) if seen[b]]
    free(g); free(lo); free(mask); free(acc); free(seen)
    return out
