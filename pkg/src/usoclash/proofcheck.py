"""Independent checker for resolution proofs.

Works on the proof's own records (or its text form); the only thing shared
with the generator is the clause type, a frozenset of signed ints.
"""

Clause = frozenset


class CheckReport:
    def __init__(self, ok, message="", step=None):
        self.ok = ok
        self.message = message
        self.step = step

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "CheckReport(ok=%r, %s)" % (self.ok, self.message)


def check(formula_clauses, inputs, steps):
    """formula_clauses: list of clauses (ids are 1-based positions).
    inputs: (id, clause) pairs; steps: (id, left, right, pivot, resolvent)."""
    store = {}
    for cid, c in inputs:
        if not 1 <= cid <= len(formula_clauses) or Clause(c) != Clause(formula_clauses[cid - 1]):
            return CheckReport(False, "input %d is not formula clause %d" % (cid, cid))
        store[cid] = Clause(c)
    if not steps:
        return CheckReport(False, "proof has no steps")
    for sid, a, b, x, c in steps:
        where = "step %d (%d, %d on %d)" % (sid, a, b, x)
        if sid in store:
            return CheckReport(False, where + ": id reused", sid)
        if a not in store or b not in store:
            return CheckReport(False, where + ": unknown premise", sid)
        A, Bc = store[a], store[b]
        if x <= 0:
            return CheckReport(False, where + ": pivot must be a positive variable", sid)
        if x in A and -x in Bc:
            res = (A - {x}) | (Bc - {-x})
        elif -x in A and x in Bc:
            res = (A - {-x}) | (Bc - {x})
        else:
            return CheckReport(False, where + ": premises do not clash on the pivot", sid)
        if any(-y in res for y in res):
            return CheckReport(False, where + ": resolvent is a tautology", sid)
        if res != Clause(c):
            return CheckReport(False, where + ": declared resolvent differs", sid)
        store[sid] = res
    if store[steps[-1][0]]:
        return CheckReport(False, "last resolvent is not empty", steps[-1][0])
    return CheckReport(True, "ok")


def proof_check(f, p):
    return check(f.clauses, p.inputs, p.steps)


def parse_proof(text):
    inputs = []
    steps = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c "):
            head, _, lits = line[2:].partition(":")
            inputs.append((int(head), Clause(int(t) for t in lits.split())))
        elif line.startswith("r "):
            head, _, lits = line[2:].partition(":")
            parts = head.split()
            # ID <- L R on VAR
            if len(parts) != 6 or parts[1] != "<-" or parts[4] != "on":
                raise ValueError("bad step line %r" % line)
            steps.append((int(parts[0]), int(parts[2]), int(parts[3]), int(parts[5]),
                          Clause(int(t) for t in lits.split())))
        else:
            raise ValueError("bad proof line %r" % line)
    return inputs, steps
