"""Text format for the linear programs (a subset of the CPLEX LP format).

Grammar (whitespace separated tokens, newlines only matter for comments):

    file      := comment* "Minimize" "obj:" NAME
                 "Subject To" constraint* "Bounds" bound* "End"
    comment   := "\\" text to end of line
    constraint:= NAME ":" term ("+"|"-" term)* ("<="|"=") INT
    term      := ["-"] COEF NAME           (first term)
    COEF      := INT | INT "/" INT
    bound     := NAME ">=" "0"  |  NAME "free"

Every variable appears in the Bounds section, in model order, so the
variable order is recoverable.  Inequality rows come first, then the
equality rows.  Terms are wrapped eight to a line.
"""

from fractions import Fraction

import numpy as np

from .cube import InvalidArgument

TERMS_PER_LINE = 8


def _fmt_row(name, terms, names, op, rhs):
    out = [" ", name, ":"]
    for k, (j, a) in enumerate(terms):
        if k and k % TERMS_PER_LINE == 0:
            out.append("\n  ")
        if a < 0:
            out.append(" -")
            a = -a
        elif k:
            out.append(" +")
        out.append(" %s %s" % (a, names[j]))
    out.append(" %s %s\n" % (op, rhs))
    return "".join(out)


def _header(lp):
    nv, ni, ne = lp.counts()
    kind = "symmetric" if lp.symmetric else "full"
    return ("\\ Sink-or-Clash randomized game, n=%d, %s model\n"
            "\\ variables %d inequalities %d equalities %d\n"
            "Minimize\n obj: v\nSubject To\n" % (lp.n, kind, nv, ni, ne))


def write_lp(lp, path):
    """path may be a filename or an open text stream."""
    if hasattr(path, "write"):
        _write_lp(lp, path)
    else:
        with open(path, "w") as fh:
            _write_lp(lp, fh)


def _write_lp(lp, fh):
    names = lp.names
    v = lp.v_index
    fh.write(_header(lp))
    rows = lp.ineq_rows
    if hasattr(rows, "chunks"):
        _write_big(fh, lp, rows)
    else:
        for i, row in enumerate(rows):
            fh.write(_fmt_row(lp.ineq_name(i), list(row) + [(v, -1)], names, "<=", 0))
    for i, (row, rhs) in enumerate(lp.eq_rows):
        fh.write(_fmt_row(lp.eq_name(i), row, names, "=", rhs))
    fh.write("Bounds\n")
    for j, nm in enumerate(names):
        fh.write(" %s free\n" % nm if j == v else " %s >= 0\n" % nm)
    fh.write("End\n")


def _write_big(fh, lp, rows):
    from ._lpwriter import format_rows
    names = lp.names
    enc = [(" %s" % nm).encode() for nm in names]
    offs = np.zeros(len(enc) + 1, dtype=np.int64)
    offs[1:] = np.cumsum([len(e) for e in enc])
    blob = np.frombuffer(b"".join(enc), dtype=np.uint8)
    first = 0
    for indptr, idx, dat in rows.chunks():
        buf = format_rows(indptr, idx, dat, blob, offs, len(names) - 1, first, TERMS_PER_LINE)
        fh.write(buf.tobytes().decode())
        first += len(indptr) - 1


# ---- parser ----

class ParsedLP:
    def __init__(self, names, ineq, eq, free, comments):
        self.names = names
        self.ineq = ineq      # list of (name, [(var name, Fraction)], rhs)
        self.eq = eq
        self.free = free
        self.comments = comments


def _num(tok):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InvalidArgument("bad number %r" % tok)


def parse_lp(text):
    comments = []
    toks = []
    for line in text.splitlines():
        if line.lstrip().startswith("\\"):
            comments.append(line.lstrip()[1:].strip())
            continue
        toks.extend(line.split())
    pos = 0

    def expect(word):
        nonlocal pos
        if pos >= len(toks) or toks[pos].lower() != word.lower():
            raise InvalidArgument("expected %r at token %d" % (word, pos))
        pos += 1

    expect("Minimize")
    expect("obj:")
    if toks[pos] != "v":
        raise InvalidArgument("objective must be the single variable v")
    pos += 1
    expect("Subject")
    expect("To")
    ineq = []
    eq = []
    while toks[pos] != "Bounds":
        name = toks[pos]
        if not name.endswith(":"):
            raise InvalidArgument("constraint name expected, got %r" % name)
        pos += 1
        terms = []
        sign = 1
        while toks[pos] not in ("<=", "="):
            t = toks[pos]
            if t in ("+", "-"):
                sign = -1 if t == "-" else 1
                pos += 1
                continue
            coef = _num(t)
            terms.append((toks[pos + 1], sign * coef))
            sign = 1
            pos += 2
        op = toks[pos]
        rhs = _num(toks[pos + 1])
        pos += 2
        (ineq if op == "<=" else eq).append((name[:-1], terms, rhs))
    expect("Bounds")
    names = []
    free = set()
    while toks[pos] != "End":
        nm = toks[pos]
        if toks[pos + 1] == "free":
            free.add(nm)
            pos += 2
        elif toks[pos + 1] == ">=" and toks[pos + 2] == "0":
            pos += 3
        else:
            raise InvalidArgument("bad bound for %r" % nm)
        names.append(nm)
    return ParsedLP(names, ineq, eq, free, comments)


def read_lp(path):
    with open(path) as fh:
        return parse_lp(fh.read())


def parsed_matches(lp, parsed):
    """Structural comparison between an in-memory model and a parsed file."""
    if parsed.names != lp.names or parsed.free != {"v"}:
        return False
    names = lp.names
    v = lp.v_index
    if len(parsed.ineq) != len(lp.ineq_rows) or len(parsed.eq) != len(lp.eq_rows):
        return False
    for i, (row, (nm, terms, rhs)) in enumerate(zip(lp.inequalities(), parsed.ineq)):
        want = [(names[j], Fraction(a)) for j, a in list(row) + [(v, -1)]]
        if nm != lp.ineq_name(i) or terms != want or rhs != 0:
            return False
    for i, ((row, b), (nm, terms, rhs)) in enumerate(zip(lp.eq_rows, parsed.eq)):
        want = [(names[j], Fraction(a)) for j, a in row]
        if nm != lp.eq_name(i) or terms != want or rhs != b:
            return False
    return True


def read_solution(path):
    """Solution vector file: one 'name value' pair per line, '#' comments."""
    vals = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InvalidArgument("bad solution line %r" % line)
            vals[parts[0]] = _num(parts[1]) if "/" in parts[1] else float(parts[1])
    return vals
