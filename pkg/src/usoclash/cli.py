"""Command-line entry point.

Every subcommand prints one JSON object (keys sorted) unless it is asked to
write a file to stdout.  Exit status: 0 success, 1 domain or I/O error,
2 usage error.
"""

import argparse
import json
import math
import sys
from fractions import Fraction

from .cube import PartialOutmapTable, UsoError, find_clash, format_outmap, is_uso, \
    is_uso_by_faces, parse_outmap, partial_clashes


def _jsonable(x):
    if isinstance(x, Fraction):
        return "%d/%d" % (x.numerator, x.denominator) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(obj, out):
    out.write(json.dumps(_jsonable(obj), sort_keys=True) + "\n")


def _read_table(path):
    if path == "-":
        return parse_outmap(sys.stdin.read())
    with open(path) as fh:
        return parse_outmap(fh.read())


def _write_text(text, path, out):
    if path == "-":
        out.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ---- subcommands ----

def cmd_verify(a, out):
    s = _read_table(a.inp)
    if isinstance(s, PartialOutmapTable):
        cl = partial_clashes(s)
        return {"partial": True, "clashes": [list(p) for p in cl]}
    res = {"uso": is_uso(s)}
    if not res["uso"]:
        res["clash"] = list(find_clash(s))
    if a.faces:
        res["uso_by_faces"] = is_uso_by_faces(s, limit=6)
    return res


def cmd_solve(a, out):
    from .constructions import random_uso
    from .solvers import solve, verify_verdict
    if a.inp:
        s = _read_table(a.inp)
        if isinstance(s, PartialOutmapTable):
            s = s.to_total()
    elif a.n is not None:
        s = random_uso(a.n, a.seed)
    else:
        raise UsoError("solve needs --in FILE or --n N")
    v = solve(s, a.algo)
    res = v.as_dict()
    res["verified"] = verify_verdict(s, v)
    res["algo"] = a.algo
    return res


def cmd_game(a, out):
    from .game import compute_t, player_wins
    if a.q is not None:
        return {"n": a.n, "q": a.q, "player_wins": player_wins(a.n, a.q, time_limit=a.time_limit)}
    stats = {}
    t = compute_t(a.n, a.q_max, time_limit=a.time_limit, stats=stats)
    return {"n": a.n, "t": t, "nodes": stats.get("nodes")}


def cmd_lp(a, out):
    from .lp import check_solution, generate_lp, solve_exact
    from .lpfile import read_solution, write_lp
    lp = generate_lp(a.n, a.symmetric)
    res = {"n": a.n, "model": "symmetric" if a.symmetric else "full",
           "counts": list(lp.counts())}
    if a.out == "-":
        write_lp(lp, out)
        return None
    if a.out:
        write_lp(lp, a.out)
        res["written"] = a.out
    if a.solve:
        value, _ = solve_exact(lp)
        res["optimum"] = value
    if a.check_solution:
        vals = read_solution(a.check_solution)
        ok, obj, worst = check_solution(lp, vals, tol=a.tol)
        res["feasible"] = bool(ok)
        res["objective"] = obj if isinstance(obj, Fraction) else float(obj)
        res["max_violation"] = worst if isinstance(worst, Fraction) else float(worst)
    return res


def cmd_proof(a, out):
    from .proofcheck import proof_check
    from .resolution import cnf_generate, format_dimacs, format_proof, proof_generate
    f = cnf_generate(a.n)
    res = {"n": a.n, "variables": f.num_vars, "clauses": len(f.clauses)}
    if a.emit_cnf:
        _write_text(format_dimacs(f), a.emit_cnf, out)
    if a.emit_proof or a.check or not a.emit_cnf:
        p = proof_generate(a.n, f)
        res.update(size=p.size, width=p.width,
                   log2_size_plus_width=round(math.log2(p.size) + p.width, 6))
        if a.emit_proof:
            _write_text(format_proof(p), a.emit_proof, out)
        if a.check:
            rep = proof_check(f, p)
            res["valid"] = rep.ok
            if not rep.ok:
                res["error"] = rep.message
    if "-" in (a.emit_cnf, a.emit_proof):
        return None
    return res


def cmd_cert(a, out):
    from . import certificates as C
    if a.check:
        s = _read_table(a.check)
        if not isinstance(s, PartialOutmapTable):
            s = PartialOutmapTable(s.n, s.values)
        rep = C.certificate_report(s, max_dim=a.max_dim)
        res = rep.as_dict()
        res["spanned"] = [i + 1 for i in range(s.n) if C.spanned_dims(s) >> i & 1]
        res["projectable"] = [i + 1 for i in range(s.n) if C.projectable_dims(s) >> i & 1]
        return res
    if a.family is not None:
        s = C.family_certificate(a.family)
        return {"n": a.family, "known": [[v, o] for v, o in s.items()],
                "k_certificate": C.is_k_certificate(s, max_dim=max(a.max_dim, a.family))}
    if a.enumerate4:
        reps = C.enumerate_4_certificates(3)
        return {"classes": len(reps), "representatives": [[list(p) for p in r] for r in reps]}
    if a.puso_scan is not None:
        found = C.puso_scan(a.puso_scan)
        from .symmetry import automorphisms, canonical_table
        G = automorphisms(a.puso_scan)
        classes = sorted({canonical_table(p.values, G) for p in found})
        return {"n": a.puso_scan, "labeled": len(found), "classes": len(classes),
                "representatives": [list(c) for c in classes]}
    raise UsoError("cert needs one of --check, --family, --enumerate4, --puso-scan")


def cmd_gen(a, out):
    if a.seven_steps:
        from .solvers import seven_steps_witness
        s = seven_steps_witness()
    else:
        from .constructions import random_uso
        if a.n is None:
            raise UsoError("gen needs --n N or --seven-steps")
        s = random_uso(a.n, a.seed)
    _write_text(format_outmap(s), a.out, out)
    return None if a.out == "-" else {"written": a.out}


# ---- parser ----

def build_parser():
    def globals_(parser, default):
        # accepted before or after the subcommand name
        d = (lambda x: x) if default else (lambda x: argparse.SUPPRESS)
        parser.add_argument("--seed", type=int, default=d(0), help="seed for randomized generators")
        parser.add_argument("--time-limit", type=float, default=d(None), help="seconds, for searches")
        parser.add_argument("--threads", type=int, default=d(1),
                            help="parallelism budget (the current kernels run serially)")

    common = argparse.ArgumentParser(add_help=False)
    globals_(common, False)
    p = argparse.ArgumentParser(prog="usoclash",
                                description="Sink-or-Clash tools for unique sink orientations.")
    globals_(p, True)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("verify", parents=[common], help="check whether an outmap file is a USO")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--faces", action="store_true", help="also run the face-by-face check")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", parents=[common], help="find a sink or a clash")
    s.add_argument("--algo", default="seesaw", help="seesaw or product:K")
    s.add_argument("--in", dest="inp")
    s.add_argument("--n", type=int, help="solve random_uso(n, seed) instead of a file")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("game", parents=[common], help="deterministic query complexity by game search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q-max", type=int, default=8)
    s.add_argument("--q", type=int, help="only decide whether q queries suffice")
    s.set_defaults(func=cmd_game)

    s = sub.add_parser("lp", parents=[common], help="randomized game linear program")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--solve", action="store_true", help="exact rational optimum (n <= 2)")
    s.add_argument("--export", "--out", dest="out", help="write the model in LP text format")
    s.add_argument("--check-solution", help="file of 'name value' lines")
    s.add_argument("--tol", type=float, default=1e-6)
    s.set_defaults(func=cmd_lp)

    s = sub.add_parser("proof", parents=[common], help="CNF formula and resolution refutation")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--emit-cnf", help="DIMACS output path ('-' for stdout)")
    s.add_argument("--emit-proof", help="proof output path ('-' for stdout)")
    s.add_argument("--check", action="store_true")
    s.set_defaults(func=cmd_proof)

    s = sub.add_parser("cert", parents=[common], help="completability and certificates")
    s.add_argument("--check", help="partial outmap file")
    s.add_argument("--family", type=int)
    s.add_argument("--enumerate4", action="store_true")
    s.add_argument("--puso-scan", type=int)
    s.add_argument("--max-dim", type=int, default=4)
    s.set_defaults(func=cmd_cert)

    s = sub.add_parser("gen", parents=[common], help="emit a random USO or the seven-steps witness")
    s.add_argument("--n", type=int)
    s.add_argument("--seven-steps", action="store_true")
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        res = args.func(args, out)
    except (UsoError, OSError) as e:
        _emit({"error": str(e), "type": type(e).__name__}, sys.stderr)
        return 1
    if res is not None:
        _emit(res, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
