"""Independent reference implementations used to cross-check the package.

Nothing here imports the code under test except plain data types.
"""

from itertools import product as iproduct

import numpy as np


def all_tables(n):
    """Every outmap table of the n-cube as an int array of shape (N**N, N)."""
    N = 1 << n
    codes = np.arange(N ** N, dtype=np.int64)
    return np.stack([(codes >> (n * v)) & (N - 1) for v in range(N)], axis=1)


def face_sink_counts_ok(n, tabs):
    """USO by definition: every face has exactly one sink (vectorized)."""
    N = 1 << n
    ok = np.ones(len(tabs), dtype=bool)
    for dims in range(N):
        for base in range(N):
            if base & dims:
                continue
            verts = [v for v in range(N) if v & ~dims == base]
            cnt = np.zeros(len(tabs), dtype=np.int64)
            for v in verts:
                cnt += (tabs[:, v] & dims) == 0
            ok &= cnt == 1
    return ok


def uso_mask_by_faces(n, chunk=1 << 20):
    N = 1 << n
    total = N ** N
    out = np.zeros(total, dtype=bool)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        tabs = np.stack([(codes >> (n * v)) & (N - 1) for v in range(N)], axis=1)
        out[start:start + len(codes)] = face_sink_counts_ok(n, tabs)
    return out


def usos_by_faces(n):
    N = 1 << n
    idx = np.nonzero(uso_mask_by_faces(n))[0]
    return [tuple(int(c) >> (n * v) & (N - 1) for v in range(N)) for c in idx]


class _Need(Exception):
    def __init__(self, v):
        self.v = v


class ScriptedOracle:
    """Answers from a fixed script; raises _Need for an unscripted vertex."""

    def __init__(self, n, script):
        self.n = n
        self.script = script
        self.count = 0
        self.log = []

    def evaluate(self, v):
        if v not in self.script:
            raise _Need(v)
        self.count += 1
        self.log.append((v, self.script[v]))
        return self.script[v]


def decision_tree_leaves(n, solver):
    """Walk the full decision tree of a deterministic query algorithm.

    Every outmap table follows exactly one root-to-leaf path, so checking the
    leaves covers all N**N tables.  Yields (script, verdict, distinct queries)."""
    N = 1 << n
    stack = [{}]
    while stack:
        script = stack.pop()
        try:
            verdict = solver(ScriptedOracle(n, script))
        except _Need as e:
            for o in range(N - 1, -1, -1):
                s = dict(script)
                s[e.v] = o
                stack.append(s)
            continue
        yield script, verdict


def leaf_verdict_ok(script, verdict):
    vs = verdict.vertices
    if any(v not in script for v in vs):
        return False
    if verdict.kind == "sink":
        return script[vs[0]] == 0
    u, v = vs
    return u != v and not (script[u] ^ script[v]) & (u ^ v)


def brute_completable(n, known, usos):
    """Some USO in the list agrees with every known entry."""
    return any(all(t[v] == o for v, o in known.items()) for t in usos)


def brute_satisfies(n, clauses, table):
    """Evaluate a clause list under the assignment x_{u,i} = bit i-1 of s(u)."""
    def val(lit):
        x = abs(lit) - 1
        u, i = divmod(x, n)
        b = table[u] >> i & 1
        return b == 1 if lit > 0 else b == 0
    return all(any(val(l) for l in c) for c in clauses)


def brute_unsat(nvars, clauses):
    for bits in iproduct((False, True), repeat=nvars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return False
    return True


def naive_player_wins(n, q, known=()):
    """Plain minimax over the query game, no symmetry or pruning."""
    N = 1 << n
    queried = {v for v, _ in known}
    if q == 0:
        return False
    for u in range(N):
        if u in queried:
            continue
        ok = True
        for o in range(N):
            legal = o != 0 and all((o ^ so) & (u ^ v) for v, so in known)
            if legal and not naive_player_wins(n, q - 1, known + ((u, o),)):
                ok = False
                break
        if ok:
            return True
    return False


def cube_group(n):
    """(vertex map, outmap map) pairs for every permutation-then-translation."""
    from itertools import permutations
    N = 1 << n
    out = []
    for perm in permutations(range(n)):
        pm = [sum(1 << perm[i] for i in range(n) if x >> i & 1) for x in range(N)]
        for t in range(N):
            out.append(([pm[x] ^ t for x in range(N)], pm))
    return out


def sequence_payoffs(n, vals, group):
    """Sum of payoffs per sequence orbit against one adversary table.

    Walks every query order consistent with the table.  At a history where
    some unqueried vertex has no legal answer only those vertices are
    candidates and the history is not extended.  Orbits are keyed by the
    lexicographically smallest image of (history, next vertex)."""
    N = 1 << n

    def legal(h, w, o):
        return o != 0 and all((o ^ so) & (w ^ u) for u, so in h)

    def key(h, w):
        return min((tuple((vm[a], om[b]) for a, b in h), vm[w]) for vm, om in group)

    acc = {}

    def rec(h):
        used = {u for u, _ in h}
        un = [w for w in range(N) if w not in used]
        forced = [w for w in un if not any(legal(h, w, o) for o in range(1, N))]
        for w in forced or un:
            if legal(h, w, vals[w]):
                if not forced:
                    rec(h + ((w, vals[w]),))
            else:
                k = key(h, w)
                acc[k] = acc.get(k, 0) + len(h) + 1

    rec(())
    return acc
