"""Exact deterministic query complexity t(n) via the two-player query game.

The player picks an unqueried vertex, the adversary answers with an outmap
value that is neither a sink nor clashes with a known vertex.  If the
adversary has no legal answer the player has found a sink or a clash.  The
player wins with budget q if that happens within q queries whatever the
adversary does.

For every unqueried vertex we keep a bitmask of still-legal answers, so a
state is a list of masks.  The last plies run in a numba kernel; the upper
plies run in Python with a transposition table keyed on the canonical form
of the known set under the cube automorphism group.
"""

import time

import numpy as np

from .cube import Aborted, InvalidArgument, popcount
from .symmetry import automorphisms

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

# plies handled by the compiled kernel
KERNEL_DEPTH = 4


def _tables(n):
    N = 1 << n
    forb = np.zeros((N, N), dtype=np.int64)
    for d in range(N):
        for o in range(N):
            forb[d, o & d] |= 1 << o
    M = 1 << N
    if M <= 1 << 16:
        AND = np.zeros(M, dtype=np.int64)
        OR = np.zeros(M, dtype=np.int64)
        for m in range(1, M):
            low = (m & -m).bit_length() - 1
            rest = m & (m - 1)
            AND[m] = low if rest == 0 else (AND[rest] & low)
            OR[m] = low if rest == 0 else (OR[rest] | low)
    else:
        AND = np.zeros(1, dtype=np.int64)
        OR = np.zeros(1, dtype=np.int64)
    return forb, AND, OR


def _and_or(m):
    a = -1
    b = 0
    o = 0
    while m:
        if m & 1:
            a &= o
            b |= o
        m >>= 1
        o += 1
    return a, b


# ---- pure Python search kernel (also the reference for the compiled one) ----

def _py_win(allowed, unq, r, forb):
    """Can the player force a verdict within r more queries?"""
    N = len(allowed)
    for u in range(N):
        if unq >> u & 1 and allowed[u] == 0:
            return True
    if r <= 1:
        return False
    if r == 2:
        info = []
        for w in range(N):
            if unq >> w & 1:
                info.append((w,) + _and_or(allowed[w]))
        for u in range(N):
            if not unq >> u & 1:
                continue
            kill = 0
            for w, a, b in info:
                if w != u:
                    d = u ^ w
                    if (a ^ b) & d == 0:
                        kill |= int(forb[d][a & d])
            if allowed[u] & ~kill == 0:
                return True
        return False
    for u in range(N):
        if not unq >> u & 1:
            continue
        rest = unq & ~(1 << u)
        ok = True
        m = allowed[u]
        o = 0
        while m:
            if m & 1:
                child = list(allowed)
                for w in range(N):
                    if rest >> w & 1:
                        d = u ^ w
                        child[w] &= ~int(forb[d][o & d])
                if not _py_win(child, rest, r - 1, forb):
                    ok = False
                    break
            m >>= 1
            o += 1
        if ok:
            return True
    return False


if njit is not None:
    @njit(cache=True)
    def _nb_win2(allowed, unq, forb, AND, OR, N):
        for u in range(N):
            if (unq >> u) & 1 and allowed[u] == 0:
                return True
        for u in range(N):
            if not (unq >> u) & 1:
                continue
            kill = 0
            for w in range(N):
                if w == u or not (unq >> w) & 1:
                    continue
                d = u ^ w
                a = AND[allowed[w]]
                b = OR[allowed[w]]
                if (a ^ b) & d == 0:
                    kill |= forb[d, a & d]
            if allowed[u] & ~kill == 0:
                return True
        return False

    @njit(cache=True)
    def _nb_win(allowed, unq, r, forb, AND, OR, N):
        for u in range(N):
            if (unq >> u) & 1 and allowed[u] == 0:
                return True
        if r <= 1:
            return False
        if r == 2:
            return _nb_win2(allowed, unq, forb, AND, OR, N)
        child = np.empty(N, dtype=np.int64)
        for u in range(N):
            if not (unq >> u) & 1:
                continue
            rest = unq & ~(1 << u)
            ok = True
            for o in range(N):
                if not (allowed[u] >> o) & 1:
                    continue
                for w in range(N):
                    child[w] = allowed[w]
                    if (rest >> w) & 1:
                        d = u ^ w
                        child[w] &= ~forb[d, o & d]
                if not _nb_win(child, rest, r - 1, forb, AND, OR, N):
                    ok = False
                    break
            if ok:
                return True
        return False
else:  # pragma: no cover
    _nb_win = None


class GameSearch:
    """Minimax search for the query game on the n-cube.

    reduce: apply the root reduction (first query at 0, root answers of the
    form e_1 | ... | e_i).  canonical: use the automorphism transposition
    table.  Limits raise Aborted instead of returning a guess."""

    def __init__(self, n, reduce=True, canonical=True, time_limit=None, node_limit=None,
                 use_kernel=True):
        if n < 1 or n > 5:
            raise InvalidArgument("game search supports 1 <= n <= 5")
        self.n = n
        self.N = 1 << n
        self.reduce = reduce
        self.canonical = canonical
        self.time_limit = time_limit
        self.node_limit = node_limit
        self.forb, self.AND, self.OR = _tables(n)
        self.kernel = use_kernel and _nb_win is not None and self.N <= 16
        self.nodes = 0
        self.kernel_calls = 0
        self.tt = {}
        self._start = None
        if canonical:
            G = automorphisms(n)
            self.gv = np.array([g.vmap for g in G], dtype=np.int64)
            self.go = np.array([g.omap for g in G], dtype=np.int64)
            self._ids = np.arange(len(G))

    # -- helpers --

    def _check_limits(self):
        if self.time_limit is not None and time.monotonic() - self._start > self.time_limit:
            raise Aborted("time limit %.1fs exceeded" % self.time_limit)

    def _play(self, allowed, unq, u, o):
        child = list(allowed)
        rest = unq & ~(1 << u)
        forb = self.forb
        for w in range(self.N):
            if rest >> w & 1:
                d = u ^ w
                child[w] &= ~int(forb[d, o & d])
        return child, rest

    def _key(self, known):
        if not self.canonical or not known:
            return tuple(sorted(known))
        vs = np.array([v for v, _ in known], dtype=np.int64)
        os_ = np.array([o for _, o in known], dtype=np.int64)
        codes = self.gv[:, vs] * self.N + self.go[:, os_]
        codes.sort(axis=1)
        # lexicographic minimum row
        order = np.lexsort(codes.T[::-1])
        return tuple(int(x) for x in codes[order[0]])

    def _leaf(self, allowed, unq, r):
        self.kernel_calls += 1
        if self.kernel:
            return bool(_nb_win(np.array(allowed, dtype=np.int64), unq, r,
                                self.forb, self.AND, self.OR, self.N))
        return _py_win(allowed, unq, r, self.forb)

    def _order_vertices(self, allowed, unq):
        us = [u for u in range(self.N) if unq >> u & 1]
        # most constrained vertex first
        us.sort(key=lambda u: (popcount(allowed[u]), u))
        return us

    @staticmethod
    def _answers(mask):
        out = []
        o = 0
        m = mask
        while m:
            if m & 1:
                out.append(o)
            m >>= 1
            o += 1
        out.sort(key=lambda x: (popcount(x), x))
        return out

    def _win(self, known, allowed, unq, r):
        for u in range(self.N):
            if unq >> u & 1 and allowed[u] == 0:
                return True
        if r <= 1:
            return False
        if r <= KERNEL_DEPTH:
            return self._leaf(allowed, unq, r)
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise Aborted("node limit %d exceeded" % self.node_limit)
        if self.nodes & 255 == 0:
            self._check_limits()
        key = self._key(known)
        lo, hi = self.tt.get(key, (0, None))
        # lo: largest budget known to lose, hi: smallest budget known to win
        if hi is not None and r >= hi:
            return True
        if r <= lo:
            return False
        result = False
        tried = set()
        for u in self._order_vertices(allowed, unq):
            if self.canonical:
                # skip vertices equivalent under the state's stabilizer
                cu = self._vertex_class(known, u)
                if cu in tried:
                    continue
                tried.add(cu)
            ok = True
            for o in self._answers(allowed[u]):
                child, rest = self._play(allowed, unq, u, o)
                if not self._win(known + [(u, o)], child, rest, r - 1):
                    ok = False
                    break
            if ok:
                result = True
                break
        if result:
            self.tt[key] = (lo, r if hi is None else min(hi, r))
        else:
            self.tt[key] = (max(lo, r), hi)
        return result

    def _vertex_class(self, known, u):
        vs = np.array([v for v, _ in known], dtype=np.int64)
        os_ = np.array([o for _, o in known], dtype=np.int64)
        codes = self.gv[:, vs] * self.N + self.go[:, os_]
        codes.sort(axis=1)
        base = np.sort(vs * self.N + os_)
        stab = np.all(codes == base, axis=1)
        return int(self.gv[stab, u].min())

    # -- entry point --

    def wins(self, q):
        """True iff the player forces a verdict within q queries."""
        if q < 1:
            raise InvalidArgument("budget must be at least 1")
        self._start = time.monotonic()
        N = self.N
        full = (1 << N) - 1
        allowed0 = [full & ~1] * N
        unq0 = full
        if not self.reduce:
            return self._win([], allowed0, unq0, q)
        # first query at 0; its answer is e_1 | ... | e_i up to symmetry
        if q == 1:
            return False
        for i in range(1, self.n + 1):
            o = (1 << i) - 1
            child, rest = self._play(allowed0, unq0, 0, o)
            if not self._win([(0, o)], child, rest, q - 1):
                return False
        return True


def player_wins(n, q, reduce=True, canonical=True, time_limit=None, node_limit=None):
    return GameSearch(n, reduce=reduce, canonical=canonical, time_limit=time_limit,
                      node_limit=node_limit).wins(q)


def compute_t(n, q_max, time_limit=None, stats=None):
    """Smallest q <= q_max with a player win, else the string '>= q_max+1'.

    Budgets are tried upward; one search object is reused so the
    transposition table carries over between budgets."""
    if n > 4 and time_limit is None:
        # exact mode is meant for n <= 4; larger n must be explicitly time boxed
        raise InvalidArgument("n > 4 needs an explicit time limit")
    g = GameSearch(n, time_limit=time_limit)
    for q in range(1, q_max + 1):
        if g.wins(q):
            if stats is not None:
                stats.update(nodes=g.nodes, kernel_calls=g.kernel_calls)
            return q
    if stats is not None:
        stats.update(nodes=g.nodes, kernel_calls=g.kernel_calls)
    return ">= %d" % (q_max + 1)
