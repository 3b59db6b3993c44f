"""Vertices, faces, outmaps and the clash predicate.

Dimension i (1-based) is bit i-1 of an integer label.  Vertices and outmap
values are plain ints in range(2**n).
"""

MAX_DIM = 16


class UsoError(Exception):
    """Base class for domain errors raised by this package."""


class InvalidArgument(UsoError, ValueError):
    pass


class PreconditionViolated(UsoError):
    pass


class Aborted(UsoError):
    """A search hit its resource limit; no answer is claimed."""


class MultipleSinks(UsoError):
    def __init__(self, face, first, second):
        super().__init__("face %r has several sinks, e.g. %d and %d" % (face, first, second))
        self.face = face
        self.witnesses = (first, second)


def _check_dim(n):
    if not isinstance(n, int) or n < 0 or n > MAX_DIM:
        raise InvalidArgument("dimension must be an int in 0..%d, got %r" % (MAX_DIM, n))


def popcount(x):
    return bin(x).count("1")


def dims_of(mask):
    """1-based dimensions contained in a bitmask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(dims):
    m = 0
    for i in dims:
        m |= 1 << (i - 1)
    return m


def compress(x, mask):
    """Gather the bits of x selected by mask into the low bits."""
    r = 0
    j = 0
    b = 0
    while mask >> b:
        if mask >> b & 1:
            r |= (x >> b & 1) << j
            j += 1
        b += 1
    return r


def expand(x, mask):
    """Inverse of compress: scatter the low bits of x to the positions of mask."""
    r = 0
    j = 0
    b = 0
    while mask >> b:
        if mask >> b & 1:
            r |= (x >> j & 1) << b
            j += 1
        b += 1
    return r


class OutmapTable:
    """A total outmap: values[v] is the outmap of vertex v."""

    __slots__ = ("n", "values")

    def __init__(self, n, values):
        _check_dim(n)
        values = tuple(int(x) for x in values)
        N = 1 << n
        if len(values) != N:
            raise InvalidArgument("expected %d outmap values, got %d" % (N, len(values)))
        for x in values:
            if x < 0 or x >= N:
                raise InvalidArgument("outmap value %d out of range for n=%d" % (x, n))
        self.n = n
        self.values = values

    def __getitem__(self, v):
        return self.values[v]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return isinstance(other, OutmapTable) and self.n == other.n and self.values == other.values

    def __hash__(self):
        return hash((self.n, self.values))

    def __repr__(self):
        return "OutmapTable(%d, %r)" % (self.n, list(self.values))

    @classmethod
    def uniform(cls, n):
        return cls(n, range(1 << n))


class PartialOutmapTable:
    """Outmap with unknown entries, stored as None."""

    __slots__ = ("n", "values")

    def __init__(self, n, values):
        _check_dim(n)
        values = tuple(None if x is None else int(x) for x in values)
        N = 1 << n
        if len(values) != N:
            raise InvalidArgument("expected %d entries, got %d" % (N, len(values)))
        for x in values:
            if x is not None and (x < 0 or x >= N):
                raise InvalidArgument("outmap value %d out of range for n=%d" % (x, n))
        self.n = n
        self.values = values

    @classmethod
    def from_known(cls, n, known):
        """Build from a dict or pair list vertex -> outmap value."""
        vals = [None] * (1 << n)
        for v, o in dict(known).items():
            if v < 0 or v >= len(vals):
                raise InvalidArgument("vertex %d out of range" % v)
            vals[v] = o
        return cls(n, vals)

    def known(self):
        return [v for v, x in enumerate(self.values) if x is not None]

    def items(self):
        return [(v, x) for v, x in enumerate(self.values) if x is not None]

    def restrict(self, vertices):
        keep = set(vertices)
        return PartialOutmapTable(self.n, [x if v in keep else None for v, x in enumerate(self.values)])

    def is_total(self):
        return all(x is not None for x in self.values)

    def to_total(self):
        if not self.is_total():
            raise PreconditionViolated("partial table has unknown entries")
        return OutmapTable(self.n, self.values)

    def __getitem__(self, v):
        return self.values[v]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return isinstance(other, PartialOutmapTable) and self.n == other.n and self.values == other.values

    def __hash__(self):
        return hash((self.n, self.values))

    def __repr__(self):
        return "PartialOutmapTable(%d, %r)" % (self.n, dict(self.items()))


class FaceSpec:
    """The face through base spanned by the dimension bitmask dims."""

    __slots__ = ("base", "dims")

    def __init__(self, base, dims):
        if base < 0 or dims < 0:
            raise InvalidArgument("negative face data")
        self.base = base & ~dims
        self.dims = dims

    def check(self, n):
        if self.base >> n or self.dims >> n:
            raise InvalidArgument("face %r does not fit in dimension %d" % (self, n))

    def vertices(self):
        d = self.dims
        out = []
        sub = 0
        # enumerate submasks of d in increasing order
        while True:
            out.append(self.base | sub)
            if sub == d:
                break
            sub = (sub - d) & d
        return out

    def __contains__(self, v):
        return (v & ~self.dims) == self.base

    def __eq__(self, other):
        return isinstance(other, FaceSpec) and (self.base, self.dims) == (other.base, other.dims)

    def __hash__(self):
        return hash((self.base, self.dims))

    def __repr__(self):
        return "FaceSpec(base=%d, dims=%r)" % (self.base, dims_of(self.dims))


def clash(u, su, v, sv):
    """True iff u and v agree in their outmaps on every dimension they differ in."""
    if u == v:
        raise InvalidArgument("clash needs two distinct vertices")
    return ((su ^ sv) & (u ^ v)) == 0


def find_clash(s):
    """Lexicographically smallest clashing pair (u, v), u < v, or None."""
    vals = s.values
    N = len(vals)
    for u in range(N):
        su = vals[u]
        for v in range(u + 1, N):
            if not (su ^ vals[v]) & (u ^ v):
                return (u, v)
    return None


def is_uso(s):
    # a repeated value is an immediate clash, a cheap early exit
    if len(set(s.values)) != len(s.values):
        return False
    return find_clash(s) is None


def face_sink(s, f):
    """The unique sink of face f, None if it has none; MultipleSinks if several."""
    f.check(s.n)
    found = None
    for v in f.vertices():
        if not s.values[v] & f.dims:
            if found is not None:
                raise MultipleSinks(f, found, v)
            found = v
    return found


def all_faces(n):
    for dims in range(1 << n):
        for base in range(1 << n):
            if base & dims == 0:
                yield FaceSpec(base, dims)


def is_uso_by_faces(s, limit=4):
    if s.n > limit:
        raise InvalidArgument("face scan refused above n=%d" % limit)
    for f in all_faces(s.n):
        try:
            if face_sink(s, f) is None:
                return False
        except MultipleSinks:
            return False
    return True


def partial_clashes(p):
    """All clashing pairs among the known vertices of a partial table."""
    items = p.items()
    out = []
    for a in range(len(items)):
        u, su = items[a]
        for b in range(a + 1, len(items)):
            v, sv = items[b]
            if not (su ^ sv) & (u ^ v):
                out.append((u, v))
    return out


def enumerate_usos(n):
    """All USOs of the n-cube by backtracking on the pairwise clash test.

    Practical for n <= 3 (744 tables at n=3)."""
    N = 1 << n
    vals = [0] * N
    out = []

    def rec(v, used):
        if v == N:
            out.append(OutmapTable(n, vals))
            return
        for o in range(N):
            if used >> o & 1:
                continue
            ok = True
            for u in range(v):
                if not (vals[u] ^ o) & (u ^ v):
                    ok = False
                    break
            if ok:
                vals[v] = o
                rec(v + 1, used | 1 << o)

    rec(0, 0)
    return out


# ---- text format ----

def _bits(x, n):
    return format(x, "0%db" % n) if n else ""


def format_outmap(s):
    """Line 1 is n, then one 'vertex outmap' line per vertex, MSB left, '*' if unknown."""
    n = s.n
    lines = [str(n)]
    for v, x in enumerate(s.values):
        lines.append("%s %s" % (_bits(v, n) or "-", "*" if x is None else (_bits(x, n) or "-")))
    return "\n".join(lines) + "\n"


def _parse_bits(tok, n, what):
    if n == 0 and tok == "-":
        return 0
    if len(tok) != n or any(c not in "01" for c in tok):
        raise InvalidArgument("bad %s bitstring %r for n=%d" % (what, tok, n))
    return int(tok, 2)


def parse_outmap(text):
    """Parse the outmap text format.  Returns OutmapTable when every entry is
    known, PartialOutmapTable otherwise."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidArgument("empty outmap file")
    try:
        n = int(lines[0])
    except ValueError:
        raise InvalidArgument("first line must be the dimension, got %r" % lines[0])
    _check_dim(n)
    N = 1 << n
    if len(lines) != N + 1:
        raise InvalidArgument("expected %d vertex lines, got %d" % (N, len(lines) - 1))
    vals = []
    for k, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != 2:
            raise InvalidArgument("bad line %r" % ln)
        v = _parse_bits(parts[0], n, "vertex")
        if v != k:
            raise InvalidArgument("vertices must appear in increasing order; line %r" % ln)
        vals.append(None if parts[1] == "*" else _parse_bits(parts[1], n, "outmap"))
    if any(x is None for x in vals):
        return PartialOutmapTable(n, vals)
    return OutmapTable(n, vals)


def read_outmap(path):
    with open(path) as fh:
        return parse_outmap(fh.read())


def write_outmap(s, path):
    with open(path, "w") as fh:
        fh.write(format_outmap(s))
