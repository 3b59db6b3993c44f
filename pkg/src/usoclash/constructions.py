"""USO construction and transformation techniques, plus a seeded random USO generator."""

import random

from .cube import (OutmapTable, FaceSpec, MultipleSinks, InvalidArgument,
                   PreconditionViolated, UsoError, face_sink, compress, expand, _check_dim)


class InheritedUndefined(UsoError):
    def __init__(self, face, reason):
        super().__init__("inherited orientation undefined: face %r has %s" % (face, reason))
        self.face = face


def xor_relabel(s, z):
    if z < 0 or z >> s.n:
        raise InvalidArgument("flip vector %d out of range" % z)
    return OutmapTable(s.n, [x ^ z for x in s.values])


def inherited(s, I):
    """Orientation on the |I|-cube whose vertex u_I sits at the sink of the
    co-face through u spanned by the other dimensions.  I is a bitmask."""
    n = s.n
    full = (1 << n) - 1
    if I & ~full:
        raise InvalidArgument("dimension set exceeds n")
    rest = full & ~I
    k = bin(I).count("1")
    out = []
    for w in range(1 << k):
        f = FaceSpec(expand(w, I), rest)
        try:
            sink = face_sink(s, f)
        except MultipleSinks:
            raise InheritedUndefined(f, "several sinks")
        if sink is None:
            raise InheritedUndefined(f, "no sink")
        out.append(compress(s.values[sink], I))
    return OutmapTable(k, out)


def product(outer, inner):
    """Combine an outer k-cube outmap with one inner table per outer vertex.

    Inner coordinates are the low dimensions 1..n-k, the outer ones sit above
    them, so vertex u.v has label (u << (n-k)) | v."""
    k = outer.n
    try:
        tabs = [inner[u] for u in range(1 << k)]
    except (KeyError, IndexError):
        raise InvalidArgument("inner table missing for some outer vertex")
    if any(t is None for t in tabs):
        raise InvalidArgument("inner table missing for some outer vertex")
    m = tabs[0].n
    if any(t.n != m for t in tabs):
        raise InvalidArgument("inner tables must share a dimension")
    vals = []
    for u in range(1 << k):
        hi = outer.values[u] << m
        vals.extend(hi | x for x in tabs[u].values)
    return OutmapTable(k + m, vals)


def is_hypervertex(s, f):
    f.check(s.n)
    out = ((1 << s.n) - 1) & ~f.dims
    vs = f.vertices()
    first = s.values[vs[0]] & out
    return all(s.values[v] & out == first for v in vs)


def hypervertex_replace(s, f, r):
    """Replace the orientation inside hypervertex f by r (r is indexed by the
    face coordinates, i.e. the bits of v in f.dims)."""
    if r.n != bin(f.dims).count("1"):
        raise InvalidArgument("replacement has dimension %d, face has %d" % (r.n, bin(f.dims).count("1")))
    if not is_hypervertex(s, f):
        raise PreconditionViolated("face %r is not a hypervertex" % f)
    vals = list(s.values)
    for v in f.vertices():
        vals[v] = (vals[v] & ~f.dims) | expand(r.values[compress(v, f.dims)], f.dims)
    return OutmapTable(s.n, vals)


def flippable_edges(s):
    """Edges (u, v), u < v, whose endpoints agree outside the edge dimension."""
    out = []
    vals = s.values
    for u in range(len(vals)):
        for i in range(s.n):
            b = 1 << i
            if u & b:
                continue
            v = u | b
            if (vals[u] ^ vals[v]) & ~b == 0:
                out.append((u, v))
    return out


def flip_matching(s, m):
    vals = list(s.values)
    seen = set()
    for u, v in m:
        d = u ^ v
        if d == 0 or d & (d - 1) or max(u, v) >> s.n:
            raise PreconditionViolated("(%d, %d) is not an edge" % (u, v))
        if u in seen or v in seen:
            raise PreconditionViolated("edges of the matching share a vertex")
        seen.update((u, v))
        if (s.values[u] ^ s.values[v]) & ~d:
            raise PreconditionViolated("edge (%d, %d) is not flippable" % (u, v))
        vals[u] ^= d
        vals[v] ^= d
    return OutmapTable(s.n, vals)


def partial_swap(s, i):
    """Entrywise: take the neighbour's outmap across dimension i when u_i != s(u)_i."""
    if i < 1 or i > s.n:
        raise InvalidArgument("dimension %d out of range" % i)
    b = 1 << (i - 1)
    vals = s.values
    return OutmapTable(s.n, [vals[u ^ b] if (u ^ vals[u]) & b else vals[u] for u in range(len(vals))])


def random_uso(n, seed):
    """A USO that depends only on (n, seed).

    Built as a 1-dim product over two recursively generated facets, then
    xor-relabelled and perturbed by a random matching of flippable edges.
    The distribution is not uniform over all USOs."""
    _check_dim(n)
    rng = random.Random("%d:%d" % (n, seed))
    s = _random_product(n, rng)
    s = xor_relabel(s, rng.randrange(1 << n))
    edges = flippable_edges(s)
    rng.shuffle(edges)
    used = set()
    m = []
    for u, v in edges:
        if u not in used and v not in used and rng.random() < 0.5:
            m.append((u, v))
            used.update((u, v))
    return flip_matching(s, m)


def _random_product(n, rng):
    if n == 0:
        return OutmapTable(0, [0])
    sub = [_random_product(n - 1, rng) for _ in range(2)]
    outer = OutmapTable(1, [0, 1] if rng.random() < 0.5 else [1, 0])
    s = product(outer, sub)
    # move the outer dimension to a random position so all directions get mixed
    j = rng.randrange(n)
    if j != n - 1:
        s = _move_top_dim(s, j)
    return s


def _move_top_dim(s, j):
    """Relabel so the top dimension becomes dimension j+1 (bits above shift up)."""
    n = s.n
    low = (1 << j) - 1

    def f(x):
        top = x >> (n - 1) & 1
        rest = x & ((1 << (n - 1)) - 1)
        return (rest & low) | (top << j) | ((rest & ~low) << 1)

    vals = [0] * (1 << n)
    for v, o in enumerate(s.values):
        vals[f(v)] = f(o)
    return OutmapTable(n, vals)
