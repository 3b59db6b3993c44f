"""Compiled text formatting of inequality rows; layout identical to lpfile._fmt_row."""

import numpy as np
from numba import njit


@njit(cache=True)
def _put_int(buf, p, x):
    if x == 0:
        buf[p] = 48
        return p + 1
    tmp = np.empty(20, dtype=np.uint8)
    k = 0
    while x > 0:
        tmp[k] = 48 + x % 10
        x //= 10
        k += 1
    for a in range(k):
        buf[p + a] = tmp[k - 1 - a]
    return p + k


@njit(cache=True)
def _put(buf, p, s):
    for a in range(len(s)):
        buf[p + a] = s[a]
    return p + len(s)


@njit(cache=True)
def _format(indptr, idx, dat, blob, offs, vcol, first, per_line):
    nrows = len(indptr) - 1
    # generous bound: per term sign, coefficient, name and line breaks
    size = 0
    for r in range(nrows):
        size += 32 + 24 * (indptr[r + 1] - indptr[r] + 1)
    for k in range(len(idx)):
        size += offs[idx[k] + 1] - offs[idx[k]]
    size += (offs[vcol + 1] - offs[vcol]) * nrows
    buf = np.empty(size, dtype=np.uint8)
    sp_a = np.array([32, 97], dtype=np.uint8)          # " a"
    colon = np.array([58], dtype=np.uint8)
    wrap = np.array([10, 32, 32], dtype=np.uint8)      # "\n  "
    minus = np.array([32, 45], dtype=np.uint8)         # " -"
    plus = np.array([32, 43], dtype=np.uint8)          # " +"
    space = np.array([32], dtype=np.uint8)
    tail = np.array([32, 60, 61, 32, 48, 10], dtype=np.uint8)  # " <= 0\n"
    p = 0
    for r in range(nrows):
        p = _put(buf, p, sp_a)
        p = _put_int(buf, p, first + r)
        p = _put(buf, p, colon)
        lo = indptr[r]
        hi = indptr[r + 1]
        nt = hi - lo + 1
        for k in range(nt):
            if k > 0 and k % per_line == 0:
                p = _put(buf, p, wrap)
            if k < nt - 1:
                j = idx[lo + k]
                a = dat[lo + k]
            else:
                j = vcol
                a = -1
            if a < 0:
                p = _put(buf, p, minus)
                a = -a
            elif k > 0:
                p = _put(buf, p, plus)
            p = _put(buf, p, space)
            p = _put_int(buf, p, a)
            for b in range(offs[j], offs[j + 1]):
                buf[p] = blob[b]
                p += 1
        p = _put(buf, p, tail)
    return buf[:p]


def format_rows(indptr, idx, dat, blob, offs, vcol, first, per_line):
    return _format(indptr, idx, dat, blob, offs, vcol, first, per_line)
