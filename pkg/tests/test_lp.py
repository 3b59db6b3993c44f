import random
from fractions import Fraction

import pytest

from usoclash.cube import OutmapTable
from usoclash.lp import (check_solution, full_histories, generate_lp, history_ok, payoff,
                         solve_exact)
from usoclash.lpfile import parse_lp, parsed_matches, read_lp, read_solution, write_lp

import oracles


def test_payoff_examples():
    assert payoff(((), 0), OutmapTable(1, [0, 1])) == 1
    assert payoff((((0, 1),), 1), OutmapTable(1, [1, 1])) == 2
    assert payoff((((0, 1),), 1), OutmapTable(1, [0, 1])) == 0
    # agrees with the record but the next vertex neither sinks nor clashes
    assert payoff((((0, 1),), 1), OutmapTable(1, [1, 0])) == 2   # 1 -> 0 is the sink
    assert payoff((((0, 3),), 3), OutmapTable(2, [3, 1, 1, 2])) == 0


def test_histories_are_clean():
    hs = full_histories(2)
    assert all(history_ok(h) for h in hs)
    # the empty history plus one per nonempty equality row
    assert len(hs) == 141 and len(set(hs)) == 141 and hs[0] == ()
    # breadth first
    assert [len(h) for h in hs] == sorted(len(h) for h in hs)


@pytest.mark.parametrize("n,sym,want", [(1, False, (5, 4, 3)), (2, False, (225, 256, 141)),
                                        (1, True, (3, 3, 2)), (2, True, (20, 43, 14))])
def test_counts(n, sym, want):
    assert generate_lp(n, sym).counts() == want


def test_symmetric_counts_n2_as_multiset():
    # the reference triple is (43, 14, 20): same numbers, different column roles
    assert sorted(generate_lp(2, True).counts()) == sorted((43, 14, 20))


@pytest.mark.parametrize("n,sym,want", [(1, False, 2), (1, True, 2),
                                        (2, False, Fraction(46, 17)), (2, True, Fraction(46, 17))])
def test_exact_optimum(n, sym, want):
    lp = generate_lp(n, sym)
    value, x = solve_exact(lp)
    assert value == want
    ok, obj, worst = check_solution(lp, x, tol=0)
    assert ok and obj == value and worst == 0


def test_value_exceeds_promise_value():
    assert Fraction(46, 17) > Fraction(43, 20)


def test_check_solution_rejects_perturbed():
    lp = generate_lp(2, True)
    value, x = solve_exact(lp)
    y = dict(x)
    y["v"] = value - Fraction(1, 100)
    ok, _, worst = check_solution(lp, y, tol=0)
    assert not ok and worst > 0


def test_scipy_oracle_n2_full():
    sp = pytest.importorskip("scipy.optimize")
    import numpy as np
    lp = generate_lp(2, False)
    nv = len(lp.names)
    A_ub = np.zeros((len(lp.ineq_rows), nv))
    for i, row in enumerate(lp.ineq_rows):
        for j, a in row:
            A_ub[i, j] = a
        A_ub[i, lp.v_index] = -1
    A_eq = np.zeros((len(lp.eq_rows), nv))
    b_eq = np.zeros(len(lp.eq_rows))
    for i, (row, b) in enumerate(lp.eq_rows):
        for j, a in row:
            A_eq[i, j] = a
        b_eq[i] = b
    c = np.zeros(nv)
    c[lp.v_index] = 1
    res = sp.linprog(c, A_ub=A_ub, b_ub=np.zeros(len(A_ub)), A_eq=A_eq, b_eq=b_eq,
                     bounds=[(0, None)] * (nv - 1) + [(None, None)], method="highs")
    assert abs(res.fun - 46 / 17) < 1e-9


def test_generation_refused_for_large_n():
    with pytest.raises(Exception):
        generate_lp(3, False)
    with pytest.raises(Exception):
        generate_lp(4, True)


@pytest.mark.parametrize("n,sym", [(1, False), (2, False), (1, True), (2, True)])
def test_lp_file_roundtrip_and_determinism(tmp_path, n, sym):
    lp = generate_lp(n, sym)
    a, b = tmp_path / "a.lp", tmp_path / "b.lp"
    write_lp(lp, a)
    write_lp(generate_lp(n, sym), b)
    assert a.read_bytes() == b.read_bytes()
    parsed = read_lp(a)
    assert parsed_matches(lp, parsed)
    assert parsed.names[-1] == "v" and parsed.free == {"v"}


def test_lp_parse_errors():
    with pytest.raises(Exception):
        parse_lp("Maximize obj: v\n")
    with pytest.raises(Exception):
        parse_lp("Minimize obj: v\nSubject To\n c1: 1 x <= 0\nBounds\n x <= 3\nEnd\n")


def test_read_solution(tmp_path):
    p = tmp_path / "sol.txt"
    p.write_text("# comment\nv 46/17\nx_n0 0.25\n")
    vals = read_solution(p)
    assert vals["v"] == Fraction(46, 17) and vals["x_n0"] == 0.25


@pytest.mark.slow
def test_n3_export_deterministic(tmp_path):
    import hashlib
    lp = generate_lp(3, True)
    p = tmp_path / "lp3.lp"
    write_lp(lp, p)
    h = hashlib.md5()
    with open(p, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 24), b""):
            h.update(block)
    assert h.hexdigest() == "82507706624e8003bc004d8f964a4477"


def _named_row(lp, row):
    return {lp.names[j]: a for j, a in row}


def _oracle_named(n, t, group):
    from usoclash.lp import seq_name
    return {seq_name(h, w): c for (h, w), c in oracles.sequence_payoffs(n, t, group).items()}


def test_symmetric_rows_against_path_oracle_n2():
    lp = generate_lp(2, True)
    group = oracles.cube_group(2)
    for i, row in enumerate(lp.ineq_rows):
        t = [int(x) for x in lp.ineq_name(i)[2:].split("_")]
        assert _named_row(lp, row) == _oracle_named(2, t, group)


def test_symmetric_rows_against_path_oracle_n3():
    import numpy as np
    from usoclash._lpkernel import rows_csr
    from usoclash.lp import SymmetricStructure
    st = SymmetricStructure(3)
    names = st.names()
    group = oracles.cube_group(3)
    rng = random.Random(3)
    tabs = [tuple(rng.randrange(8) for _ in range(8)) for _ in range(25)]
    tabs += [(7, 7, 7, 7, 7, 7, 7, 0), (3, 3, 5, 5, 6, 6, 1, 2)]
    indptr, idx, dat = rows_csr(np.array(tabs, dtype=np.int64), st.N, st.gv, st.go, st.comp,
                                st.ginv_v, *st.packed(), len(st.seqs))
    for i, t in enumerate(tabs):
        want = _oracle_named(3, t, group)
        assert {names[j]: a for j, a in st.row(t)} == want
        lo, hi = indptr[i], indptr[i + 1]
        assert {names[int(j)]: int(a) for j, a in zip(idx[lo:hi], dat[lo:hi])} == want


def test_symmetric_equalities_n3_structure():
    from usoclash.lp import SymmetricStructure
    st = SymmetricStructure(3)
    eq = st.equalities()
    assert len(eq) == len(st.hist)
    # every sequence variable appears in exactly one history row with its orbit size
    seen = {}
    for row, _ in eq:
        for j, a in row:
            if a > 0:
                seen[j] = seen.get(j, 0) + 1
    assert len(seen) == len(st.seqs) and set(seen.values()) == {1}
