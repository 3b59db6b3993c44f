"""The Sink-or-Clash CNF family and its recursive resolution refutation.

Variable x_{u,i} (vertex u, dimension i in 1..n) is DIMACS variable u*n + i
and is true when the i-edge at u is outgoing.  A literal is a signed int, a
clause a frozenset of literals.
"""

from .cube import InvalidArgument

Clause = frozenset

MAX_CNF_DIM = 8


def var(n, u, i):
    return u * n + i


def var_name(n, x):
    u, i = divmod(x - 1, n)
    return "x_%d,%d" % (u, i + 1)


def _submasks(mask):
    out = []
    sub = 0
    while True:
        out.append(sub)
        if sub == mask:
            break
        sub = (sub - mask) & mask
    return out


class CnfFormula:
    """Non-sink clauses (one per vertex) followed by non-clash clauses
    (pairs u < v in lexicographic order, patterns o ascending)."""

    def __init__(self, n, nonsink, nonclash, nonclash_keys):
        self.n = n
        self.nonsink = nonsink
        self.nonclash = nonclash
        self.nonclash_keys = nonclash_keys   # (u, v, o) per non-clash clause

    @property
    def clauses(self):
        return self.nonsink + self.nonclash

    @property
    def num_vars(self):
        return self.n << self.n

    def index(self):
        """Map (u, v, o) -> 1-based clause id, and u -> id of its non-sink clause."""
        m = len(self.nonsink)
        nc = {k: m + 1 + j for j, k in enumerate(self.nonclash_keys)}
        ns = {u: u + 1 for u in range(m)}
        return ns, nc


def nonclash_clause(n, u, v, o):
    """Clause forbidding s(u) and s(v) to both equal o on the dims where u, v differ.
    o is a bitmask over those dims."""
    d = u ^ v
    lits = []
    for i in range(n):
        if d >> i & 1:
            sgn = -1 if o >> i & 1 else 1
            lits.append(sgn * var(n, u, i + 1))
            lits.append(sgn * var(n, v, i + 1))
    return Clause(lits)


def cnf_generate(n):
    if n < 1 or n > MAX_CNF_DIM:
        raise InvalidArgument("CNF generation supports 1 <= n <= %d" % MAX_CNF_DIM)
    N = 1 << n
    nonsink = [Clause(var(n, u, i) for i in range(1, n + 1)) for u in range(N)]
    nonclash = []
    keys = []
    for u in range(N):
        for v in range(u + 1, N):
            for o in _submasks(u ^ v):
                nonclash.append(nonclash_clause(n, u, v, o))
                keys.append((u, v, o))
    return CnfFormula(n, nonsink, nonclash, keys)


class ResolutionProof:
    """inputs: list of (id, clause) naming formula clauses by their 1-based
    position; steps: list of (id, left, right, pivot var, resolvent)."""

    def __init__(self, n, inputs, steps):
        self.n = n
        self.inputs = inputs
        self.steps = steps

    @property
    def size(self):
        return len(self.steps)

    @property
    def width(self):
        w = max((len(c) for _, c in self.inputs), default=0)
        return max([w] + [len(s[4]) for s in self.steps])

    def final(self):
        return self.steps[-1][4] if self.steps else None


def resolve(a, b, x):
    """Resolvent of a and b on variable x (either orientation)."""
    if x in a and -x in b:
        return Clause((a - {x}) | (b - {-x}))
    if -x in a and x in b:
        return Clause((a - {-x}) | (b - {x}))
    raise InvalidArgument("clauses do not clash on variable %d" % x)


class _Builder:
    def __init__(self, f):
        self.f = f
        self.n = f.n
        self.store = {}
        self.used = {}
        self.steps = []
        self.next_id = len(f.clauses) + 1
        self.ns_id, self.nc_id = f.index()
        self.pivot_log = []   # (step id, extra-literal set) for disjointness checks

    def input(self, cid):
        c = self.f.clauses[cid - 1]
        self.used[cid] = c
        self.store[cid] = c
        return cid

    def nonclash(self, u, v, o):
        if u > v:
            u, v = v, u
        return self.input(self.nc_id[(u, v, o & (u ^ v))])

    def step(self, a, b, x, extra):
        c = resolve(self.store[a], self.store[b], x)
        sid = self.next_id
        self.next_id += 1
        self.store[sid] = c
        self.steps.append((sid, a, b, x, c))
        self.pivot_log.append((sid, extra))
        return sid


def _emit(B, m, embed, ns, extra):
    """Refute the m-dim subcube embed(0..2^m-1) whose non-sink roles are
    played by clause ids ns[w]; returns the id of the final clause.

    The subcube spans dims 1..m of the ambient cube; extra is the set of
    literals threaded through the role clauses (for bookkeeping only)."""
    n = B.n
    if m == 1:
        a, b = embed(0), embed(1)
        r1 = B.step(ns[0], B.nonclash(a, b, 1), var(n, a, 1), extra)
        return B.step(r1, ns[1], var(n, b, 1), extra)
    half = 1 << (m - 1)
    top = half  # bit of dimension m
    D = {}
    for up in range(half, 2 * half):
        U = embed(up)
        C = {}
        for low in range(half):
            V = embed(low)
            nc = B.nonclash(U, V, top)
            r1 = B.step(nc, ns[up], var(n, U, m), extra)
            C[low] = B.step(r1, ns[low], var(n, V, m), extra)
        more = frozenset(var(n, U, i) for i in range(1, m))
        D[up - half] = _emit(B, m - 1, embed, C, extra | more)
    return _emit(B, m - 1, lambda w: embed(w | top), D, extra)


def proof_generate(n, formula=None):
    if n < 1 or n > 6:
        raise InvalidArgument("proof generation supports 1 <= n <= 6")
    f = formula if formula is not None else cnf_generate(n)
    B = _Builder(f)
    ns = {w: B.input(B.ns_id[w]) for w in range(1 << n)}
    _emit(B, n, lambda w: w, ns, frozenset())
    proof = ResolutionProof(n, sorted(B.used.items()), B.steps)
    proof.pivot_log = B.pivot_log
    return proof


def pivot_disjoint(p):
    """True if no step pivots on a variable from the extra literals threaded
    through the template instantiation it belongs to."""
    log = getattr(p, "pivot_log", None)
    if log is None:
        raise InvalidArgument("proof carries no instantiation log")
    piv = {sid: x for sid, _, _, x, _ in p.steps}
    return all(piv[sid] not in extra for sid, extra in log)


def size_recursion(n):
    s = 2
    for m in range(2, n + 1):
        h = 1 << (m - 1)
        s = s + h * (2 * h + s)
    return s


def width_closed_form(n):
    # upper bound max(2n, w(n-1) + n - 1) solved in closed form
    return 2 * n if n <= 3 else (n * n - n + 6) // 2


# ---- text formats ----

def _lits(c):
    return " ".join(str(x) for x in sorted(c, key=lambda x: (abs(x), x)))


def format_proof(p):
    lines = []
    for cid, c in p.inputs:
        lines.append(("c %d: %s" % (cid, _lits(c))).rstrip())
    for sid, a, b, x, c in p.steps:
        lines.append(("r %d <- %d %d on %d : %s" % (sid, a, b, x, _lits(c))).rstrip())
    return "\n".join(lines) + "\n"


def format_dimacs(f):
    out = ["p cnf %d %d" % (f.num_vars, len(f.clauses))]
    for c in f.clauses:
        out.append(" ".join(str(x) for x in sorted(c, key=lambda x: (abs(x), x))) + " 0")
    return "\n".join(out) + "\n"


def export_dimacs(f, path):
    with open(path, "w") as fh:
        fh.write(format_dimacs(f))


def parse_dimacs(text):
    """Returns (num_vars, clause list)."""
    nv = None
    nc = None
    clauses = []
    cur = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InvalidArgument("bad header %r" % line)
            nv, nc = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            x = int(tok)
            if x == 0:
                clauses.append(Clause(cur))
                cur = []
            else:
                cur.append(x)
    if nv is None:
        raise InvalidArgument("missing header")
    if cur or len(clauses) != nc:
        raise InvalidArgument("clause count does not match header")
    return nv, clauses
