"""Linear programs for the randomized Sink-or-Clash game.

A history is an ordered tuple of (vertex, outmap) pairs with no sink and no
clash.  A sequence is a history plus the next vertex to query.  The player's
mixed strategy is a probability x_S for every sequence; the value v bounds
the expected payoff against every adversary outmap:

    minimize v
    sum_S M[S, O] x_S <= v              for every outmap O
    sum_P x_(empty, P) = 1
    sum_P x_(H, P) = x_parent(H)        for every nonempty history H
    x >= 0

where M[S, O] = |H| + 1 if O agrees with H and the next vertex is a sink
under O or clashes with H, else 0.

The symmetric model merges sequences, histories and outmaps that are images
of each other under the cube automorphism group and gives every member of a
sequence orbit the same probability.  It also cuts the tree at histories
where some unqueried vertex has no legal answer: querying such a vertex ends
the game with the smallest payoff still possible, so the optimum is kept.
"""

from fractions import Fraction
import itertools

import numpy as np

from .cube import InvalidArgument, OutmapTable
from .symmetry import automorphisms
from .simplex import solve_lp


# ---- data model ----

class LinearProgram:
    """Variables are named; the last one is the free objective variable v.

    ineq_rows holds rows of the form  sum a_j x_j - v <= 0  as lists of
    (column, int) pairs without the v term; it may be a lazy RowSource.
    eq_rows are (row, rhs) with rhs an int."""

    def __init__(self, n, symmetric, names, eq_rows, ineq_rows, ineq_names=None, eq_names=None):
        self.n = n
        self.symmetric = symmetric
        self.names = names
        self.eq_rows = eq_rows
        self.ineq_rows = ineq_rows
        self.ineq_names = ineq_names
        self.eq_names = eq_names

    @property
    def v_index(self):
        return len(self.names) - 1

    def counts(self):
        """(variables including v, inequalities, equalities)."""
        return (len(self.names), len(self.ineq_rows), len(self.eq_rows))

    def inequalities(self):
        return iter(self.ineq_rows)

    def ineq_name(self, i):
        return self.ineq_names[i] if self.ineq_names is not None else "a%d" % i

    def eq_name(self, i):
        return self.eq_names[i] if self.eq_names is not None else "e%d" % i


def history_ok(h):
    """No sink and no pairwise clash among the recorded pairs."""
    for a in range(len(h)):
        u, su = h[a]
        if su == 0:
            return False
        for b in range(a):
            v, sv = h[b]
            if u == v or not (su ^ sv) & (u ^ v):
                return False
    return True


def payoff(S, O):
    """|H|+1 if O agrees with H and the next vertex ends the game under O, else 0."""
    h, nxt = S
    vals = O.values
    for v, o in h:
        if vals[v] != o:
            return 0
    o = vals[nxt]
    if o == 0 or any(not (o ^ so) & (nxt ^ v) for v, so in h):
        return len(h) + 1
    return 0


def _valid_mask(n, h, v):
    N = 1 << n
    m = 0
    for o in range(1, N):
        if all((o ^ so) & (v ^ w) for w, so in h):
            m |= 1 << o
    return m


def seq_name(h, nxt):
    parts = ["%do%d" % (v, o) for v, o in h]
    parts.append("n%d" % nxt)
    return "x_" + "_".join(parts)


# ---- full model ----

def full_histories(n):
    """All histories, breadth first by length and lexicographic within a length."""
    N = 1 << n
    out = [()]
    level = [()]
    while level:
        nxt = []
        for h in level:
            used = {v for v, _ in h}
            for v in range(N):
                if v in used:
                    continue
                m = _valid_mask(n, h, v)
                for o in range(1, N):
                    if m >> o & 1:
                        nxt.append(h + ((v, o),))
        out.extend(nxt)
        level = nxt
    return out


def generate_full(n):
    if n > 2:
        raise InvalidArgument("the unreduced model is only generated for n <= 2")
    N = 1 << n
    hist = full_histories(n)
    seqs = []
    for h in hist:
        used = {v for v, _ in h}
        seqs.extend((h, v) for v in range(N) if v not in used)
    index = {s: i for i, s in enumerate(seqs)}
    names = [seq_name(*s) for s in seqs] + ["v"]
    eq = [([(index[((), v)], 1) for v in range(N)], 1)]
    for h in hist[1:]:
        used = {v for v, _ in h}
        row = [(index[(h, v)], 1) for v in range(N) if v not in used]
        row.append((index[(h[:-1], h[-1][0])], -1))
        eq.append((row, 0))
    ineq = []
    tables = [OutmapTable(n, t) for t in itertools.product(range(N), repeat=N)]
    for O in tables:
        row = []
        for j, S in enumerate(seqs):
            p = payoff(S, O)
            if p:
                row.append((j, p))
        ineq.append(row)
    names_ineq = ["a_" + "_".join(str(x) for x in O.values) for O in tables]
    return LinearProgram(n, False, names, eq, ineq, ineq_names=names_ineq,
                         eq_names=["root"] + ["e%d" % i for i in range(1, len(eq))])


# ---- symmetric model ----

class SymmetricStructure:
    """Histories up to symmetry, arranged as a trie in canonical coordinates.

    For history class k (canonical representative hist[k]):
      cand[k]      bitmask of candidate next vertices
      valid[k][v]  bitmask of legal answers at vertex v
      seqvar[k][v] variable index of the sequence (hist[k], v) for candidates v
      child[k][v*N+o] = (child class, automorphism s) with s in Stab(hist[k])
                        mapping (v, o) onto the canonical child pair
    """

    def __init__(self, n):
        if n < 1 or n > 3:
            raise InvalidArgument("symmetric model is generated for 1 <= n <= 3")
        self.n = n
        N = self.N = 1 << n
        G = automorphisms(n)
        self.G = G
        self.gv = np.array([g.vmap for g in G], dtype=np.int64)
        self.go = np.array([g.omap for g in G], dtype=np.int64)
        ng = len(G)
        gindex = {(g.vmap, g.omap): i for i, g in enumerate(G)}
        comp = np.zeros((ng, ng), dtype=np.int64)  # comp[a, b] = a after b
        for a in range(ng):
            for b in range(ng):
                va, oa = G[a].vmap, G[a].omap
                vb, ob = G[b].vmap, G[b].omap
                comp[a, b] = gindex[(tuple(va[vb[x]] for x in range(N)), tuple(oa[ob[x]] for x in range(N)))]
        self.comp = comp
        inv = np.zeros((ng, N), dtype=np.int64)
        for i, g in enumerate(G):
            for x in range(N):
                inv[i, g.vmap[x]] = x
        self.ginv_v = inv

        hist = [()]
        parent = [-1]
        cand = []
        valid = []
        seqvar = []
        seqsize = []
        seqs = []
        child = []
        level_ids = [0]
        # breadth first; the classes of each length are numbered in sorted order
        while level_ids:
            pending = []
            for k in level_ids:
                h = hist[k]
                stab = [g for g in G if g.pairs(h) == h]
                used = {v for v, _ in h}
                vm = [0] * N
                for v in range(N):
                    if v not in used:
                        vm[v] = _valid_mask(n, h, v)
                un = [v for v in range(N) if v not in used]
                forced = [v for v in un if vm[v] == 0]
                cs = forced if forced else un
                rep = {v: min(g.vmap[v] for g in stab) for v in cs}
                reps = sorted(set(rep.values()))
                base = len(seqs)
                for r in reps:
                    seqs.append((k, r))
                    seqsize.append(sum(1 for v in cs if rep[v] == r))
                sv = [-1] * N
                cm = 0
                for v in cs:
                    sv[v] = base + reps.index(rep[v])
                    cm |= 1 << v
                cand.append(cm)
                valid.append(vm)
                seqvar.append(sv)
                child.append({})
                if forced:
                    continue
                kids = {}
                for v in cs:
                    for o in range(1, N):
                        if vm[v] >> o & 1:
                            best = None
                            for g in stab:
                                p = (g.vmap[v], g.omap[o])
                                if best is None or p < best[0]:
                                    best = (p, g)
                            kids.setdefault(best[0], []).append((v, o, best[1]))
                for p, members in kids.items():
                    pending.append((h + (p,), k, members))
            pending.sort(key=lambda t: t[0])
            level_ids = []
            for hh, pk, members in pending:
                cid = len(hist)
                hist.append(hh)
                parent.append(pk)
                level_ids.append(cid)
                for v, o, g in members:
                    child[pk][v * N + o] = (cid, gindex[(g.vmap, g.omap)])
        self.hist = hist
        self.parent = parent
        self.cand = cand
        self.valid = valid
        self.seqvar = seqvar
        self.seqs = seqs
        self.seqsize = seqsize
        self.child = child

    def counts(self):
        return (len(self.seqs) + 1, len(self.hist))

    def names(self):
        return [seq_name(self.hist[k], r) for k, r in self.seqs] + ["v"]

    def equalities(self):
        rows = []
        N = self.N
        root = {}
        for j, (k, r) in enumerate(self.seqs):
            if k == 0:
                root[j] = self.seqsize[j]
        rows.append((sorted(root.items()), 1))
        by_hist = {}
        for j, (k, r) in enumerate(self.seqs):
            by_hist.setdefault(k, []).append(j)
        for k in range(1, len(self.hist)):
            h = self.hist[k]
            pk = self.parent[k]
            pv = self.seqvar[pk][h[-1][0]]
            row = [(j, self.seqsize[j]) for j in by_hist.get(k, [])]
            row.append((pv, -1))
            rows.append((row, 0))
        return rows

    def packed(self):
        """Dense arrays for the compiled row kernel."""
        H = len(self.hist)
        N = self.N
        cand = np.array(self.cand, dtype=np.int64)
        valid = np.array(self.valid, dtype=np.int64)
        seqvar = np.array(self.seqvar, dtype=np.int64)
        ch = np.full((H, N * N), -1, dtype=np.int64)
        cs = np.zeros((H, N * N), dtype=np.int64)
        for k, d in enumerate(self.child):
            for key, (cid, s) in d.items():
                ch[k, key] = cid
                cs[k, key] = s
        return cand, valid, seqvar, ch, cs

    def row(self, O):
        """Coefficients sum_{S' in [S]} M[S', O] for one adversary table."""
        N = self.N
        vals = O.values if isinstance(O, OutmapTable) else O
        acc = {}
        gv, go, comp, ginv = self.gv, self.go, self.comp, self.ginv_v
        stack = [(0, 0, 0)]  # identity is automorphism 0
        while stack:
            k, gi, depth = stack.pop()
            cm = self.cand[k]
            vm = self.valid[k]
            for vp in range(N):
                if not cm >> vp & 1:
                    continue
                v = int(ginv[gi, vp])
                op = int(go[gi, vals[v]])
                if vm[vp] >> op & 1:
                    cid, s = self.child[k][vp * N + op]
                    stack.append((cid, int(comp[s, gi]), depth + 1))
                else:
                    j = self.seqvar[k][vp]
                    acc[j] = acc.get(j, 0) + depth + 1
        return sorted(acc.items())


def outmap_orbit_reps(n, G=None):
    """Smallest member of every orbit of outmap tables, as value tuples, sorted."""
    if G is None:
        G = automorphisms(n)
    N = 1 << n
    if n <= 2:
        reps = set()
        for t in itertools.product(range(N), repeat=N):
            reps.add(min(tuple(g.table(t)) for g in G))
        return sorted(reps)
    # n == 3: vectorised over all 2**24 tables, codes with vertex 0 most significant
    bits = n
    total = 1 << (bits * N)
    reps = []
    chunk = 1 << 22
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = [(codes >> (bits * (N - 1 - v))) & (N - 1) for v in range(N)]
        best = codes.copy()
        for g in G:
            om = np.array(g.omap, dtype=np.int64)
            img = np.zeros_like(codes)
            for v in range(N):
                img |= om[digits[v]] << (bits * (N - 1 - g.vmap[v]))
            np.minimum(best, img, out=best)
        mine = codes[best == codes]
        reps.append(mine)
    reps = np.concatenate(reps)
    return reps  # codes; decode with decode_table


def decode_table(code, n):
    N = 1 << n
    return tuple((int(code) >> (n * (N - 1 - v))) & (N - 1) for v in range(N))


class RowSource:
    """Lazy inequality rows of the symmetric model, one per outmap orbit."""

    def __init__(self, struct, reps, chunk=4096):
        self.struct = struct
        self.reps = reps
        self.chunk = chunk

    def __len__(self):
        return len(self.reps)

    def table(self, i):
        r = self.reps[i]
        return r if isinstance(r, tuple) else decode_table(r, self.struct.n)

    def __iter__(self):
        if self.struct.n <= 2:
            for i in range(len(self.reps)):
                yield self.struct.row(self.table(i))
            return
        for indptr, idx, data in self.chunks():
            for a in range(len(indptr) - 1):
                lo, hi = indptr[a], indptr[a + 1]
                yield list(zip(idx[lo:hi].tolist(), data[lo:hi].tolist()))

    def chunks(self):
        """CSR blocks (indptr, indices, data) computed by the compiled kernel."""
        from ._lpkernel import rows_csr
        s = self.struct
        packed = s.packed()
        nvars = len(s.seqs)
        for start in range(0, len(self.reps), self.chunk):
            block = self.reps[start:start + self.chunk]
            tabs = np.array([self.table(start + i) for i in range(len(block))], dtype=np.int64)
            yield rows_csr(tabs, s.N, s.gv, s.go, s.comp, s.ginv_v, *packed, nvars)


def generate_symmetric(n):
    st = SymmetricStructure(n)
    reps = outmap_orbit_reps(n, st.G)
    if n <= 2:
        rows = [st.row(r) for r in reps]
        ineq_names = ["a_" + "_".join(str(x) for x in r) for r in reps]
    else:
        rows = RowSource(st, reps)
        ineq_names = None
    eq = st.equalities()
    lp = LinearProgram(n, True, st.names(), eq, rows, ineq_names=ineq_names,
                       eq_names=["root"] + ["e%d" % i for i in range(1, len(eq))])
    lp.structure = st
    return lp


def generate_lp(n, symmetric=False):
    if n < 1 or n > 3:
        raise InvalidArgument("LP generation supports 1 <= n <= 3")
    return generate_symmetric(n) if symmetric else generate_full(n)


# ---- solving and checking ----

def solve_exact(lp, max_pivots=None):
    """Exact optimum (a Fraction) and the optimal point as a name -> Fraction dict."""
    if not isinstance(lp.ineq_rows, list):
        raise InvalidArgument("exact solving is limited to in-memory models (n <= 2)")
    v = lp.v_index
    ub = [row + [(v, -1)] for row in lp.ineq_rows]
    res = solve_lp(len(lp.names), {v: 1}, ub, [0] * len(ub),
                   [r for r, _ in lp.eq_rows], [b for _, b in lp.eq_rows],
                   free=[v], max_pivots=max_pivots, start=_pure_start(lp))
    return res.value, dict(zip(lp.names, res.x))


def _pure_start(lp):
    """Starting basis from a deterministic strategy: in every history the
    first candidate sequence of its equality row is played with certainty,
    and v sits in the row of the adversary table that pays most against it."""
    nin = len(lp.ineq_rows)
    start = {}
    x = [Fraction(0)] * len(lp.names)
    for i, (row, rhs) in enumerate(lp.eq_rows):
        pos = [j for j, a in row if a > 0]
        parent = [j for j, a in row if a < 0]
        start[nin + i] = pos[0]
        a = dict(row)[pos[0]]
        x[pos[0]] = (rhs + sum(x[j] for j in parent)) / a
    best = None
    for i, row in enumerate(lp.ineq_rows):
        val = sum(a * x[j] for j, a in row)
        if best is None or val > best[0]:
            best = (val, i)
    start[best[1]] = lp.v_index
    return start


def check_solution(lp, values, tol=0):
    """Check a point against every row.  values maps names to numbers (missing
    names are zero).  Returns (ok, objective, worst violation)."""
    x = np.zeros(len(lp.names), dtype=object if tol == 0 else float)
    for i, nm in enumerate(lp.names):
        if nm in values:
            x[i] = values[nm] if tol == 0 else float(values[nm])
    worst = 0
    for i in range(len(lp.names) - 1):
        if x[i] < -tol:
            worst = max(worst, -x[i])
    vv = x[lp.v_index]
    for row, b in lp.eq_rows:
        r = sum(a * x[j] for j, a in row) - b
        worst = max(worst, abs(r))
    if isinstance(lp.ineq_rows, RowSource) and lp.n == 3:
        xf = np.asarray(x, dtype=float)
        for indptr, idx, data in lp.ineq_rows.chunks():
            prod = data * xf[idx]
            sums = np.add.reduceat(prod, indptr[:-1]) if len(prod) else np.zeros(len(indptr) - 1)
            empty = indptr[:-1] == indptr[1:]
            sums[empty] = 0.0
            worst = max(worst, float(np.max(sums - vv, initial=0.0)))
    else:
        for row in lp.inequalities():
            r = sum(a * x[j] for j, a in row) - vv
            if r > worst:
                worst = r
    return worst <= tol, vv, worst
