"""Exact two-phase simplex over Fractions with an anti-cycling pivot rule.

Problem form:
    minimize   c.x
    subject to A_ub x <= b_ub,  A_eq x = b_eq
               x_j >= 0 unless j is listed as free
Rows are sparse: lists of (column, coefficient).
"""

from fractions import Fraction

from .cube import Aborted, UsoError


class Infeasible(UsoError):
    pass


class Unbounded(UsoError):
    pass


class SimplexResult:
    def __init__(self, value, x, pivots):
        self.value = value
        self.x = x
        self.pivots = pivots

    def __repr__(self):
        return "SimplexResult(value=%s, pivots=%d)" % (self.value, self.pivots)


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows          # list of dict col -> Fraction
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r, c, objs):
        row = self.rows[r]
        a = row[c]
        if a != 1:
            inv = 1 / a
            for k in row:
                row[k] *= inv
            self.rhs[r] *= inv
        b = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(c)
            if f is None:
                continue
            _axpy(other, row, -f)
            self.rhs[i] -= f * b
        for obj in objs:
            f = obj[0].get(c)
            if f:
                _axpy(obj[0], row, -f)
                obj[1] -= f * b
        self.basis[r] = c
        self.pivots += 1

    def run(self, obj, allowed, max_pivots):
        """Minimise the objective held as [reduced-cost dict, -value].

        Dantzig's rule while the objective strictly improves; after a
        degenerate pivot Bland's rule takes over until it improves again,
        which rules out cycling."""
        bland = False
        while True:
            neg = [(v, k) for k, v in obj[0].items() if v < 0 and k in allowed]
            if not neg:
                return
            if bland:
                enter = min(k for _, k in neg)
            else:
                enter = min(neg)[1]
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(enter)
                if a is not None and a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise Unbounded("objective unbounded below")
            if max_pivots is not None and self.pivots >= max_pivots:
                raise Aborted("pivot limit %d reached" % max_pivots)
            before = obj[1]
            self.pivot(best[1], enter, self._objs)
            bland = obj[1] == before


def _warm_start(t, start, neg, first_art):
    """Pivot the suggested columns in; report whether the basis is feasible
    and free of artificials.  On failure the tableau is still a valid
    (equivalent) system, so phase 1 can continue from it."""
    for r in sorted(start):
        c = start[r]
        if t.rows[r].get(c):
            t.pivot(r, c, t._objs)
    if any(b is None or b >= first_art for b in t.basis):
        return False
    return all(b >= 0 for b in t.rhs)


def _axpy(dst, src, f):
    for k, v in src.items():
        nv = dst.get(k, 0) + f * v
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)


def solve_lp(nvars, cost, ub_rows, ub_rhs, eq_rows, eq_rhs, free=(), max_pivots=None,
             start=None):
    """Exact optimum of the problem described in the module docstring.

    cost is a dict col -> coefficient.  start optionally maps row numbers
    (inequality rows first, then equality rows) to columns that should form
    the starting basis; if that basis turns out primal feasible, phase 1 is
    skipped.  Returns SimplexResult with the optimal value and a primal
    optimal point.  Raises Infeasible / Unbounded / Aborted."""
    free = set(free)
    # free variables split as x = x+ - x-, x- gets a new column
    neg = {}
    col = nvars
    for j in sorted(free):
        neg[j] = col
        col += 1

    def expand(row):
        out = {}
        for j, a in row:
            a = Fraction(a)
            if not a:
                continue
            out[j] = out.get(j, 0) + a
            if j in neg:
                out[neg[j]] = out.get(neg[j], 0) - a
        return {k: v for k, v in out.items() if v}

    rows = []
    rhs = []
    basis = []
    art = []
    for row, b in zip(ub_rows, ub_rhs):
        r = expand(row)
        b = Fraction(b)
        s = col
        col += 1
        r[s] = Fraction(1)
        if b < 0:
            r = {k: -v for k, v in r.items()}
            b = -b
            rows.append(r)
            rhs.append(b)
            basis.append(None)
            art.append(len(rows) - 1)
        else:
            rows.append(r)
            rhs.append(b)
            basis.append(s)
    for row, b in zip(eq_rows, eq_rhs):
        r = expand(row)
        b = Fraction(b)
        if b < 0:
            r = {k: -v for k, v in r.items()}
            b = -b
        rows.append(r)
        rhs.append(b)
        basis.append(None)
        art.append(len(rows) - 1)
    first_art = col
    for i in art:
        rows[i][col] = Fraction(1)
        basis[i] = col
        col += 1
    t = _Tableau(rows, rhs, basis, col)

    # phase 1: minimise the sum of artificials
    ph1 = [{}, Fraction(0)]
    for i in art:
        for k, v in rows[i].items():
            if k < first_art:
                ph1[0][k] = ph1[0].get(k, 0) - v
        ph1[1] -= rhs[i]
    ph1[0] = {k: v for k, v in ph1[0].items() if v}
    # phase 2 objective expressed in the current basis
    ph2 = [{}, Fraction(0)]
    for j, c in cost.items():
        c = Fraction(c)
        if c:
            ph2[0][j] = ph2[0].get(j, 0) + c
            if j in neg:
                ph2[0][neg[j]] = ph2[0].get(neg[j], 0) - c
    t._objs = [ph1, ph2]
    real = set(range(first_art))
    if start:
        if not _warm_start(t, start, neg, first_art):
            return solve_lp(nvars, cost, ub_rows, ub_rhs, eq_rows, eq_rhs, free, max_pivots)
        ph1[1] = Fraction(0)
    else:
        t.run(ph1, real, max_pivots)
    if ph1[1] != 0:
        raise Infeasible("no feasible point (phase 1 value %s)" % (-ph1[1]))
    # drive remaining artificials out of the basis where possible
    for i in range(len(rows)):
        if basis[i] is not None and basis[i] >= first_art:
            for k in sorted(rows[i]):
                if k < first_art and rows[i][k] != 0:
                    t.pivot(i, k, t._objs)
                    break
    for row in rows:
        for k in [k for k in row if k >= first_art]:
            del row[k]
    for k in [k for k in ph2[0] if k >= first_art]:
        del ph2[0][k]
    t._objs = [ph2]
    t.run(ph2, real, max_pivots)
    xs = [Fraction(0)] * first_art
    for i, b in enumerate(basis):
        if b is not None and b < first_art:
            xs[b] = rhs[i]
    x = xs[:nvars]
    for j, jn in neg.items():
        x[j] = xs[j] - xs[jn]
    value = sum((Fraction(c) * x[j] for j, c in cost.items()), Fraction(0))
    return SimplexResult(value, x, t.pivots)
