# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same signatures and results as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, uint8_t, uint64_t, int64_t

cnp.import_array()

NAME = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def hopcroft(table, finals):
    cdef const int32_t[:, ::1] tab = np.ascontiguousarray(table, dtype=np.int32)
    cdef const uint8_t[::1] fin = np.ascontiguousarray(finals, dtype=np.uint8)
    cdef Py_ssize_t n = tab.shape[0], s = tab.shape[1]
    cdef Py_ssize_t q, c, t, i, k, y, nb, a, f, e, mid, idx, top, ntouched, cnt

    # predecessors in CSR form, indexed by c * n + target
    cdef int64_t[::1] pstart = np.zeros(s * n + 1, dtype=np.int64)
    cdef int32_t[::1] plist = np.empty(max(s * n, 1), dtype=np.int32)
    cdef int64_t[::1] fill = np.empty(s * n, dtype=np.int64)
    for q in range(n):
        for c in range(s):
            pstart[c * n + tab[q, c] + 1] += 1
    for i in range(s * n):
        pstart[i + 1] += pstart[i]
        fill[i] = pstart[i]
    for q in range(n):
        for c in range(s):
            k = c * n + tab[q, c]
            plist[fill[k]] = <int32_t>q
            fill[k] += 1

    # partition as a permutation of states with contiguous block ranges
    cdef int32_t[::1] elems = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] loc = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] blk = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] first = np.empty(n + 1, dtype=np.int32)
    cdef int32_t[::1] end = np.empty(n + 1, dtype=np.int32)
    cdef int32_t[::1] marked_end = np.empty(n + 1, dtype=np.int32)
    cdef int32_t[::1] touched = np.empty(n + 1, dtype=np.int32)
    cdef int32_t[::1] buf = np.empty(n, dtype=np.int32)
    cdef uint8_t[::1] pending = np.zeros((n + 1) * s, dtype=np.uint8)
    cdef int32_t[::1] work_b = np.empty((n + 1) * s, dtype=np.int32)
    cdef int32_t[::1] work_c = np.empty((n + 1) * s, dtype=np.int32)

    cdef Py_ssize_t nfin = 0
    for q in range(n):
        if fin[q]:
            nfin += 1
    a = 0
    f = nfin
    for q in range(n):
        if fin[q]:
            elems[a] = <int32_t>q
            loc[q] = <int32_t>a
            a += 1
        else:
            elems[f] = <int32_t>q
            loc[q] = <int32_t>f
            f += 1
    nb = 0
    if nfin > 0:
        first[nb] = 0
        end[nb] = <int32_t>nfin
        nb += 1
    if nfin < n:
        first[nb] = <int32_t>nfin
        end[nb] = <int32_t>n
        nb += 1
    for y in range(nb):
        marked_end[y] = first[y]
        for i in range(first[y], end[y]):
            blk[elems[i]] = <int32_t>y

    top = 0
    if nb == 2:
        y = 0 if end[0] - first[0] <= end[1] - first[1] else 1
        for c in range(s):
            work_b[top] = <int32_t>y
            work_c[top] = <int32_t>c
            pending[y * s + c] = 1
            top += 1

    cdef Py_ssize_t splitter, lo, hi, small_lo, small_hi
    while top > 0:
        top -= 1
        splitter = work_b[top]
        c = work_c[top]
        pending[splitter * s + c] = 0
        cnt = end[splitter] - first[splitter]
        for i in range(cnt):
            buf[i] = elems[first[splitter] + i]
        ntouched = 0
        for i in range(cnt):
            t = buf[i]
            k = c * n + t
            for e in range(pstart[k], pstart[k + 1]):
                q = plist[e]
                y = blk[q]
                idx = loc[q]
                mid = marked_end[y]
                if idx < mid:
                    continue
                if mid == first[y]:
                    touched[ntouched] = <int32_t>y
                    ntouched += 1
                # swap q into the marked prefix of its block
                elems[idx] = elems[mid]
                loc[elems[idx]] = <int32_t>idx
                elems[mid] = <int32_t>q
                loc[q] = <int32_t>mid
                marked_end[y] = <int32_t>(mid + 1)
        for i in range(ntouched):
            y = touched[i]
            mid = marked_end[y]
            marked_end[y] = first[y]
            if mid == end[y]:
                continue
            lo = first[y]
            hi = end[y]
            if mid - lo <= hi - mid:
                small_lo = lo
                small_hi = mid
                first[y] = <int32_t>mid
            else:
                small_lo = mid
                small_hi = hi
                end[y] = <int32_t>mid
            marked_end[y] = first[y]
            first[nb] = <int32_t>small_lo
            end[nb] = <int32_t>small_hi
            marked_end[nb] = <int32_t>small_lo
            for e in range(small_lo, small_hi):
                blk[elems[e]] = <int32_t>nb
            for a in range(s):
                pending[nb * s + a] = 1
                work_b[top] = <int32_t>nb
                work_c[top] = <int32_t>a
                top += 1
            nb += 1
    return np.asarray(blk).copy()


cdef inline bint _member(uint64_t x, uint64_t m, uint64_t r, bint complement) nogil:
    if x < r:
        return False
    x -= r
    if x % m:
        return False
    return ((__builtin_popcountll(x // m) & 1) == 0) != complement


def sweep(table, finals, int initial, int base, int max_len,
          m, r, bint complement, int max_report):
    cdef const int32_t[:, ::1] tab = np.ascontiguousarray(table, dtype=np.int32)
    cdef const uint8_t[::1] fin = np.ascontiguousarray(finals, dtype=np.uint8)
    cdef uint64_t um = m, ur = r
    cdef Py_ssize_t depth = max_len + 1
    cdef int32_t[::1] st = np.empty(depth, dtype=np.int32)
    cdef uint64_t[::1] vals = np.empty(depth, dtype=np.uint64)
    cdef int32_t[::1] digit = np.empty(depth, dtype=np.int32)
    cdef Py_ssize_t level = 0
    cdef long long checked = 0
    cdef int state, d
    cdef bint got
    mismatches = []

    st[0] = initial
    vals[0] = 0
    digit[0] = -1
    # iterative DFS; digit[level] is the next digit to try below this node
    while True:
        if digit[level] == -1:
            checked += 1
            state = st[level]
            got = state >= 0 and fin[state]
            if got != _member(vals[level], um, ur, complement):
                if len(mismatches) < max_report:
                    mismatches.append((int(vals[level]), int(level), bool(got)))
            digit[level] = 0
        if level < max_len and digit[level] < base:
            d = digit[level]
            digit[level] = d + 1
            state = st[level]
            st[level + 1] = tab[state, d] if state >= 0 else -1
            vals[level + 1] = vals[level] * base + d
            digit[level + 1] = -1
            level += 1
        elif level == 0:
            break
        else:
            level -= 1
    return int(checked), mismatches


def residual_row(n, int base, int max_len, m, r, bint complement):
    cdef uint64_t un = n, um = m, ur = r, width = 1, x0, v, t, offset = 0
    cdef Py_ssize_t length, count = 0
    cdef int64_t[::1] o
    # upper bound on the number of hits: one per m consecutive test words, per length
    for length in range(max_len + 1):
        count += <Py_ssize_t>(width // um + 1)
        width *= base
    out = np.empty(count, dtype=np.int64)
    o = out
    count = 0
    width = 1
    for length in range(max_len + 1):
        x0 = un * width
        # accepted test words lie on the progression x0 + v = r + t*m
        if x0 >= ur:
            v = (um - (x0 - ur) % um) % um
        else:
            v = ur - x0
        if v < width:
            t = (x0 + v - ur) // um
            while v < width:
                if ((__builtin_popcountll(t) & 1) == 0) != complement:
                    o[count] = <int64_t>(offset + v)
                    count += 1
                v += um
                t += 1
        offset += width
        width *= base
    return out[:count].copy()
