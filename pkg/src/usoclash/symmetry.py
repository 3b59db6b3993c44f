"""The hypercube automorphism group and its action on vertices and outmaps.

An automorphism is a dimension permutation followed by an XOR translation;
there are n! * 2**n of them.  On vertices it acts as v -> perm(v) ^ t and on
outmap values as o -> perm(o) (translation does not change edge directions).
With an extra flip vector z the outmap action becomes o -> perm(o) ^ z, which
flips every edge in the dimensions of z.
"""

from itertools import permutations


def permute_bits(x, perm):
    """Move bit i of x to bit perm[i]."""
    r = 0
    i = 0
    while x:
        if x & 1:
            r |= 1 << perm[i]
        x >>= 1
        i += 1
    return r


def permutation_tables(n):
    """For each dimension permutation, the induced map on all 2**n labels."""
    N = 1 << n
    return [tuple(permute_bits(x, p) for x in range(N)) for p in permutations(range(n))]


class Automorphism:
    __slots__ = ("vmap", "omap")

    def __init__(self, vmap, omap):
        self.vmap = vmap
        self.omap = omap

    def vertex(self, v):
        return self.vmap[v]

    def outmap(self, o):
        return self.omap[o]

    def pairs(self, items):
        vm, om = self.vmap, self.omap
        return tuple((vm[v], om[o]) for v, o in items)

    def table(self, values):
        """Image of a dense table (entries may be None)."""
        out = [None] * len(values)
        vm, om = self.vmap, self.omap
        for v, o in enumerate(values):
            out[vm[v]] = None if o is None else om[o]
        return out


def automorphisms(n, flips=False):
    """All automorphisms (optionally times the 2**n flip vectors), identity first."""
    N = 1 << n
    out = []
    for pt in permutation_tables(n):
        for t in range(N):
            vmap = tuple(pt[v] ^ t for v in range(N))
            if flips:
                for z in range(N):
                    out.append(Automorphism(vmap, tuple(pt[o] ^ z for o in range(N))))
            else:
                out.append(Automorphism(vmap, pt))
    return out


def canonical_table(values, group):
    """Lexicographically smallest image of a dense table; None sorts first."""
    best = None
    for g in group:
        img = tuple(-1 if x is None else x for x in g.table(values))
        if best is None or img < best:
            best = img
    return tuple(None if x == -1 else x for x in best)


def canonical_pairs(items, group):
    """Smallest sorted image of a set of (vertex, outmap) pairs."""
    return min(tuple(sorted(g.pairs(items))) for g in group)
