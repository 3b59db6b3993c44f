"""Completability of partial outmaps, k-certificates and pseudo USOs."""

from itertools import combinations

from .cube import (Aborted, InvalidArgument, OutmapTable, PartialOutmapTable,
                   PreconditionViolated, compress, dims_of, partial_clashes, popcount)
from .symmetry import automorphisms, canonical_pairs

DEFAULT_MAX_DIM = 4


class CertificateReport:
    """kind is "completable" (witness: a USO agreeing with the input),
    "noncompletable" (certificate: a minimal non-completable set of known
    vertices) or "k-certificate" (k = number of known vertices)."""

    def __init__(self, kind, witness=None, certificate=None, k=None):
        self.kind = kind
        self.witness = witness
        self.certificate = certificate
        self.k = k

    @property
    def completable(self):
        return self.kind == "completable"

    def as_dict(self):
        d = {"kind": self.kind}
        if self.witness is not None:
            d["witness"] = list(self.witness.values)
        if self.certificate is not None:
            d["certificate"] = list(self.certificate)
        if self.k is not None:
            d["k"] = self.k
        return d

    def __repr__(self):
        return "CertificateReport(%r)" % self.as_dict()


def _forbidden(n):
    """forb[d][c]: bitmask of values o with o & d == c (c a submask of d)."""
    N = 1 << n
    forb = [[0] * N for _ in range(N)]
    for d in range(N):
        for o in range(N):
            forb[d][o & d] |= 1 << o
    return forb


def _by_popcount(n):
    return sorted(range(1 << n), key=lambda o: (popcount(o), o))


def _complete(n, known, node_limit=None):
    """A USO (value list) extending the dict known, or None.

    Backtracking with forward checking: each unknown vertex keeps the set of
    values that clash with nothing fixed so far; the vertex with the fewest
    such values goes next (ties by label) and values are tried by popcount."""
    N = 1 << n
    forb = _forbidden(n)
    order = _by_popcount(n)
    full = (1 << N) - 1
    dom = [full] * N
    fixed = [None] * N
    items = sorted(known.items())
    for a in range(len(items)):
        u, su = items[a]
        for b in range(a + 1, len(items)):
            v, sv = items[b]
            if not (su ^ sv) & (u ^ v):
                return None
    for u, su in items:
        fixed[u] = su
    for w in range(N):
        if fixed[w] is not None:
            continue
        m = full
        for u, su in items:
            d = u ^ w
            m &= ~forb[d][su & d]
        if not m:
            return None
        dom[w] = m
    free = [w for w in range(N) if fixed[w] is None]
    nodes = [0]

    def rec(free, dom):
        if not free:
            return True
        nodes[0] += 1
        if node_limit is not None and nodes[0] > node_limit:
            raise Aborted("completion search exceeded %d nodes" % node_limit)
        w = min(free, key=lambda x: (popcount(dom[x]), x))
        rest = [x for x in free if x != w]
        for o in order:
            if not dom[w] >> o & 1:
                continue
            nd = dom[:]
            ok = True
            for x in rest:
                d = x ^ w
                m = nd[x] & ~forb[d][o & d]
                if not m:
                    ok = False
                    break
                nd[x] = m
            if ok:
                fixed[w] = o
                if rec(rest, nd):
                    return True
        fixed[w] = None
        return False

    if rec(free, dom):
        return list(fixed)
    return None


def _check_guard(s, max_dim):
    if max_dim is not None and s.n > max_dim:
        raise Aborted("completion refused above n=%d (raise max_dim to allow)" % max_dim)


def is_completable(s, max_dim=DEFAULT_MAX_DIM, node_limit=None):
    _check_guard(s, max_dim)
    return _complete(s.n, dict(s.items()), node_limit) is not None


def minimal_noncompletable(s, max_dim=DEFAULT_MAX_DIM):
    """Known vertices of a minimal non-completable restriction of s (s itself
    must be non-completable).  Drops vertices greedily in ascending order."""
    _check_guard(s, max_dim)
    keep = dict(s.items())
    for v in sorted(keep):
        trial = dict(keep)
        del trial[v]
        if _complete(s.n, trial) is None:
            keep = trial
    return sorted(keep)


def completable(s, max_dim=DEFAULT_MAX_DIM):
    _check_guard(s, max_dim)
    w = _complete(s.n, dict(s.items()))
    if w is not None:
        return CertificateReport("completable", witness=OutmapTable(s.n, w))
    return CertificateReport("noncompletable", certificate=minimal_noncompletable(s, max_dim))


def is_k_certificate(s, max_dim=DEFAULT_MAX_DIM):
    _check_guard(s, max_dim)
    known = dict(s.items())
    if _complete(s.n, known) is not None:
        return False
    # completability is inherited by subsets, so dropping one vertex suffices
    for v in known:
        sub = dict(known)
        del sub[v]
        if _complete(s.n, sub) is None:
            return False
    return True


def certificate_report(s, max_dim=DEFAULT_MAX_DIM):
    if is_k_certificate(s, max_dim):
        return CertificateReport("k-certificate", certificate=s.known(), k=len(s.known()))
    return completable(s, max_dim)


# ---- reductions ----

def spanned_dims(s):
    """Bitmask of dimensions on which two known vertices differ."""
    ks = s.known()
    if not ks:
        return 0
    anyv = 0
    allv = (1 << s.n) - 1
    for v in ks:
        anyv |= v
        allv &= v
    return anyv & ~allv


def projectable_dims(s):
    """Bitmask of dimensions on which all known outmap values agree."""
    vals = [o for _, o in s.items()]
    full = (1 << s.n) - 1
    if not vals:
        return full
    anyo = 0
    allo = full
    for o in vals:
        anyo |= o
        allo &= o
    return full & ~(anyo & ~allo)


def project(s, I):
    """The projected partial outmap onto the dimension bitmask I."""
    m = popcount(I)
    vals = [None] * (1 << m)
    for u, o in s.items():
        cu, co = compress(u, I), compress(o, I)
        if vals[cu] is not None and vals[cu] != co:
            raise PreconditionViolated("projection onto dims %s is not well defined"
                                       % [i + 1 for i in dims_of(I)])
        vals[cu] = co
    return PartialOutmapTable(m, vals)


def reduction_mask(s):
    """Dimensions (bitmask, in the original labelling) kept by reduce."""
    full = (1 << s.n) - 1
    drop = full & ~spanned_dims(s)
    proj = projectable_dims(s) & ~drop
    if proj and partial_clashes(s):
        raise PreconditionViolated("projectable dimensions may only be dropped without clashes")
    return full & ~(drop | proj)


def reduce(s):
    """Drop every non-spanned and every projectable dimension.

    Neither coordinates nor outmap bits of the remaining dimensions change,
    so one round reaches the fixed point."""
    return project(s, reduction_mask(s))


# ---- certificate family and 4-certificates ----

def family_certificate(n):
    if n < 3:
        raise InvalidArgument("the certificate family needs n >= 3")
    full = (1 << n) - 1
    known = {full: 0}
    for i in range(n):
        known[1 << i] = (1 << i) | (1 << ((i + 1) % n))
    return PartialOutmapTable.from_known(n, known)


def _no_clash(items):
    for a in range(len(items)):
        u, su = items[a]
        for b in range(a + 1, len(items)):
            v, sv = items[b]
            if not (su ^ sv) & (u ^ v):
                return False
    return True


def enumerate_4_certificates(n=3):
    """Class representatives (sorted (vertex, value) tuples) of the
    4-certificates at n=3 with every dimension spanned and none projectable,
    up to cube automorphisms combined with flipping all edges of any set of
    dimensions."""
    if n != 3:
        raise InvalidArgument("the 4-certificate classification is for n = 3")
    N = 1 << n
    full = N - 1
    group = automorphisms(n, flips=True)
    classes = set()
    for quad in combinations(range(N), 4):
        anyv = 0
        allv = full
        for v in quad:
            anyv |= v
            allv &= v
        if anyv & ~allv != full:
            continue
        for a in range(N):
            for b in range(N):
                if not (a ^ b) & (quad[0] ^ quad[1]):
                    continue
                for c in range(N):
                    for d in range(N):
                        items = list(zip(quad, (a, b, c, d)))
                        if not _no_clash(items):
                            continue
                        anyo = a | b | c | d
                        allo = a & b & c & d
                        if anyo & ~allo != full:
                            continue
                        s = PartialOutmapTable.from_known(n, items)
                        if is_k_certificate(s):
                            classes.add(canonical_pairs(items, group))
    return sorted(classes)


# ---- pseudo USOs ----

def is_puso(s):
    """Not a USO, although every facet is.

    A pair of vertices shares a facet unless it is antipodal, so this means
    clashes exist and all of them are between antipodal vertices."""
    n = s.n
    full = (1 << n) - 1
    vals = s.values
    found = False
    for u in range(1 << n):
        for v in range(u + 1, 1 << n):
            if not (vals[u] ^ vals[v]) & (u ^ v):
                if u ^ v != full:
                    return False
                found = True
    return found


def puso_scan(n=3):
    """All PUSO tables at n <= 3 by a vectorized scan over every table."""
    import numpy as np
    if n > 3:
        raise InvalidArgument("PUSO scan refused above n=3")
    N = 1 << n
    full = N - 1
    total = 1 << (n * N)
    out = []
    chunk = 1 << 20
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        vals = [(codes >> (n * v)) & full for v in range(N)]
        facet_clash = np.zeros(len(codes), dtype=bool)
        anti_clash = np.zeros(len(codes), dtype=bool)
        for u in range(N):
            for v in range(u + 1, N):
                c = ((vals[u] ^ vals[v]) & (u ^ v)) == 0
                if u ^ v == full:
                    anti_clash |= c
                else:
                    facet_clash |= c
        hit = np.nonzero(anti_clash & ~facet_clash)[0]
        for k in hit:
            code = int(codes[k])
            out.append(OutmapTable(n, [(code >> (n * v)) & full for v in range(N)]))
    return out
