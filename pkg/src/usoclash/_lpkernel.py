"""Compiled inequality-row kernel for the symmetric LP (used at n = 3)."""

import numpy as np
from numba import njit


@njit(cache=True)
def _rows(tabs, N, go, comp, ginv, cand, valid, seqvar, ch, cs, nvars):
    nrows = tabs.shape[0]
    indptr = np.zeros(nrows + 1, dtype=np.int64)
    cap = max(1024, nrows * 64)
    idx = np.empty(cap, dtype=np.int64)
    dat = np.empty(cap, dtype=np.int64)
    acc = np.zeros(nvars, dtype=np.int64)
    touched = np.empty(nvars, dtype=np.int64)
    sk = np.empty(4096, dtype=np.int64)
    sg = np.empty(4096, dtype=np.int64)
    sd = np.empty(4096, dtype=np.int64)
    nnz = 0
    for r in range(nrows):
        nt = 0
        top = 0
        sk[0] = 0
        sg[0] = 0
        sd[0] = 0
        top = 1
        while top > 0:
            top -= 1
            k = sk[top]
            gi = sg[top]
            depth = sd[top]
            cm = cand[k]
            for vp in range(N):
                if not (cm >> vp) & 1:
                    continue
                v = ginv[gi, vp]
                op = go[gi, tabs[r, v]]
                if (valid[k, vp] >> op) & 1:
                    key = vp * N + op
                    sk[top] = ch[k, key]
                    sg[top] = comp[cs[k, key], gi]
                    sd[top] = depth + 1
                    top += 1
                else:
                    j = seqvar[k, vp]
                    if acc[j] == 0:
                        touched[nt] = j
                        nt += 1
                    acc[j] += depth + 1
        if nnz + nt > cap:
            while nnz + nt > cap:
                cap *= 2
            ni = np.empty(cap, dtype=np.int64)
            nd = np.empty(cap, dtype=np.int64)
            ni[:nnz] = idx[:nnz]
            nd[:nnz] = dat[:nnz]
            idx = ni
            dat = nd
        srt = np.sort(touched[:nt])
        for a in range(nt):
            j = srt[a]
            idx[nnz] = j
            dat[nnz] = acc[j]
            acc[j] = 0
            nnz += 1
        indptr[r + 1] = nnz
    return indptr, idx[:nnz].copy(), dat[:nnz].copy()


def rows_csr(tabs, N, gv, go, comp, ginv, cand, valid, seqvar, ch, cs, nvars):
    return _rows(np.ascontiguousarray(tabs, dtype=np.int64), N, go, comp, ginv,
                 cand, valid, seqvar, ch, cs, nvars)
