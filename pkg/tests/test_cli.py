import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from usoclash.cli import main
from usoclash.cube import is_uso, parse_outmap, partial_clashes
from usoclash.lp import generate_lp
from usoclash.lpfile import parse_lp, parsed_matches
from usoclash.proofcheck import check, parse_proof
from usoclash.resolution import parse_dimacs

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0
    return json.loads(text)


def test_verify(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text((GOLDEN / "outmap_n3_seed1.txt").read_text())
    assert run_json("verify", "--in", str(p)) == {"uso": True}
    assert run_json("verify", "--in", str(p), "--faces") == {"uso": True, "uso_by_faces": True}
    p.write_text("2\n00 01\n01 01\n10 00\n11 10\n")
    res = run_json("verify", "--in", str(p))
    assert res["uso"] is False and len(res["clash"]) == 2


def test_solve_file_and_seed(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text((GOLDEN / "outmap_n3_seed1.txt").read_text())
    res = run_json("solve", "--algo", "seesaw", "--in", str(p))
    assert res["verified"] and res["kind"] == "sink" and res["queries"] <= 5
    res = run_json("solve", "--algo", "product:1", "--n", "3", "--seed", "4")
    assert res["verified"]


def test_lp_symmetric_solve():
    res = run_json("lp", "--n", "2", "--symmetric", "--solve")
    assert res["optimum"] == "46/17"
    assert run_json("lp", "--n", "1", "--solve")["optimum"] == "2"


def test_game():
    assert run_json("game", "--n", "2")["t"] == 3
    assert run_json("game", "--n", "2", "--q", "2")["player_wins"] is False


def test_proof_and_cert():
    res = run_json("proof", "--n", "3", "--check")
    assert res["valid"] and res["size"] == 102
    res = run_json("cert", "--family", "3")
    assert res["k_certificate"] is True


def test_exit_codes(tmp_path, capsys):
    assert main(["verify", "--in", str(tmp_path / "missing.txt")]) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["type"] == "FileNotFoundError"
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n00 01\n")
    assert main(["verify", "--in", str(bad)]) == 1
    assert main(["cert", "--family", "2"]) == 1
    with pytest.raises(SystemExit) as e:
        main(["verify", "--bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2


def test_global_flags_either_side():
    a = run("--seed", "7", "gen", "--n", "3")
    b = run("gen", "--n", "3", "--seed", "7")
    assert a == b and a[0] == 0
    assert run("gen", "--n", "3", "--seed", "8") != a


def test_subprocess_deterministic():
    cmd = [sys.executable, "-m", "usoclash", "solve", "--n", "4", "--seed", "3"]
    outs = {subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1


# ---- golden files ----

@pytest.mark.parametrize("name,argv", [
    ("outmap_n3_seed1.txt", ["gen", "--n", "3", "--seed", "1"]),
    ("seven_steps.txt", ["gen", "--seven-steps"]),
    ("cnf_n2.cnf", ["proof", "--n", "2", "--emit-cnf", "-"]),
    ("proof_n2.txt", ["proof", "--n", "2", "--emit-proof", "-"]),
    ("lp_n1_full.lp", ["lp", "--n", "1", "--export", "-"]),
    ("lp_n2_symmetric.lp", ["lp", "--n", "2", "--symmetric", "--export", "-"]),
])
def test_golden_bytes(name, argv):
    code, text = run(*argv)
    assert code == 0
    assert text.encode() == (GOLDEN / name).read_bytes()


def test_golden_contents_are_sound():
    assert is_uso(parse_outmap((GOLDEN / "outmap_n3_seed1.txt").read_text()))
    s = parse_outmap((GOLDEN / "seven_steps.txt").read_text())
    assert len(s.known()) == 7 and not partial_clashes(s)
    nv, clauses = parse_dimacs((GOLDEN / "cnf_n2.cnf").read_text())
    assert nv == 8 and len(clauses) == 20
    inputs, steps = parse_proof((GOLDEN / "proof_n2.txt").read_text())
    assert check(clauses, inputs, steps)
    assert parsed_matches(generate_lp(1, False), parse_lp((GOLDEN / "lp_n1_full.lp").read_text()))
    assert parsed_matches(generate_lp(2, True),
                          parse_lp((GOLDEN / "lp_n2_symmetric.lp").read_text()))
