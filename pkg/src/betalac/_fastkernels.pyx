# Compiled kernels: bitset shift-or accumulation for Minkowski sums and
# truncated int64 convolution.  Overflow policy for the convolution is
# delegated to the caller (pre-checked bound), so the loops stay branch-free.

import numpy as np

cimport numpy as cnp

NAME = "cython"


def shift_or(cnp.uint64_t[::1] packed, object shifts, Py_ssize_t horizon):
    cdef Py_ssize_t nwords = (horizon + 63) >> 6
    out = np.zeros(nwords, dtype=np.uint64)
    cdef cnp.uint64_t[::1] ov = out
    cdef Py_ssize_t ws, i, lim, src_len = packed.shape[0]
    cdef int bs, rem
    cdef long long s
    for s in shifts:
        ws = s >> 6
        bs = s & 63
        lim = nwords - ws
        if lim > src_len:
            lim = src_len
        if bs == 0:
            for i in range(lim):
                ov[i + ws] |= packed[i]
        else:
            for i in range(lim):
                ov[i + ws] |= packed[i] << bs
                if i + ws + 1 < nwords:
                    ov[i + ws + 1] |= packed[i] >> (64 - bs)
    rem = horizon & 63
    if rem:
        ov[nwords - 1] &= (<cnp.uint64_t> 1 << rem) - 1
    return out


def convolve_counts_int64(cnp.int64_t[::1] a, cnp.int64_t[::1] b, Py_ssize_t horizon):
    out = np.zeros(horizon, dtype=np.int64)
    cdef cnp.int64_t[::1] ov = out
    cdef Py_ssize_t i, j, jmax, na = a.shape[0], nb = b.shape[0]
    cdef cnp.int64_t ai
    for i in range(min(na, horizon)):
        ai = a[i]
        if ai == 0:
            continue
        jmax = nb
        if jmax > horizon - i:
            jmax = horizon - i
        for j in range(jmax):
            ov[i + j] += ai * b[j]
    return out
