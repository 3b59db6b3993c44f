"""Approximate the n=3 symmetric LP optimum with an external LP solver.

Not part of the package: needs scipy (HiGHS).  The full model has about
350k inequality rows, so rows are added lazily: solve with a subset, scan
every row against the current point, add the most violated ones, repeat.
The result is written as 'name value' lines for `usoclash lp --check-solution`.

    python scripts/lp3_rowgen.py OUT.txt
"""

import sys
import time

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from usoclash.lp import generate_lp


def eq_matrix(lp):
    rows, cols, vals, rhs = [], [], [], []
    for i, (row, b) in enumerate(lp.eq_rows):
        for j, a in row:
            rows.append(i)
            cols.append(j)
            vals.append(a)
        rhs.append(b)
    m = sp.csr_matrix((vals, (rows, cols)), shape=(len(lp.eq_rows), len(lp.names)))
    return m, np.array(rhs, dtype=float)


def scan(lp, x):
    """Row values A x for every inequality row (v excluded)."""
    out = []
    for indptr, idx, dat in lp.ineq_rows.chunks():
        prod = dat * x[idx]
        s = np.add.reduceat(prod, indptr[:-1]) if len(prod) else np.zeros(len(indptr) - 1)
        s[indptr[:-1] == indptr[1:]] = 0.0
        out.append(s)
    return np.concatenate(out)


def fetch(lp, wanted):
    """CSR rows (with the -v column) for the sorted row indices in wanted."""
    nv = len(lp.names)
    v = lp.v_index
    rows, cols, vals = [], [], []
    wanted = np.asarray(wanted)
    start = 0
    r = 0
    for indptr, idx, dat in lp.ineq_rows.chunks():
        n = len(indptr) - 1
        sel = wanted[(wanted >= start) & (wanted < start + n)] - start
        for a in sel:
            lo, hi = indptr[a], indptr[a + 1]
            rows.extend([r] * (hi - lo + 1))
            cols.extend(idx[lo:hi].tolist() + [v])
            vals.extend(dat[lo:hi].tolist() + [-1])
            r += 1
        start += n
    return sp.csr_matrix((vals, (rows, cols)), shape=(r, nv))


def main(out_path, batch=4000, tol=1e-9):
    t0 = time.time()
    lp = generate_lp(3, True)
    nv = len(lp.names)
    A_eq, b_eq = eq_matrix(lp)
    c = np.zeros(nv)
    c[lp.v_index] = 1.0
    bounds = [(0, None)] * (nv - 1) + [(None, None)]
    active = np.arange(0, len(lp.ineq_rows), max(1, len(lp.ineq_rows) // batch))
    A_ub = fetch(lp, active)
    print("generated in %.0fs" % (time.time() - t0), flush=True)
    while True:
        res = linprog(c, A_ub=A_ub, b_ub=np.zeros(A_ub.shape[0]), A_eq=A_eq, b_eq=b_eq,
                      bounds=bounds, method="highs")
        if res.status != 0:
            raise SystemExit("solver failed: %s" % res.message)
        x = res.x
        vals = scan(lp, x)
        viol = vals - x[lp.v_index]
        bad = np.nonzero(viol > tol)[0]
        print("rows %d  value %.9f  max row %.9f  violated %d  (%.0fs)"
              % (A_ub.shape[0], res.fun, vals.max(), len(bad), time.time() - t0), flush=True)
        if len(bad) == 0:
            break
        pick = bad[np.argsort(-viol[bad])[:batch]]
        A_ub = sp.vstack([A_ub, fetch(lp, np.sort(pick))]).tocsr()
    with open(out_path, "w") as fh:
        fh.write("# n=3 symmetric model, value %.9f\n" % res.fun)
        for nm, val in zip(lp.names, x):
            if nm == "v" or val > 1e-12:
                fh.write("%s %.12g\n" % (nm, val))


if __name__ == "__main__":
    main(sys.argv[1])
