from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from usoclash.cube import Aborted
from usoclash.simplex import Infeasible, Unbounded, solve_lp


def test_small_known():
    # min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
    r = solve_lp(2, {0: -1, 1: -1}, [[(0, 1), (1, 2)], [(0, 3), (1, 1)]], [4, 6], [], [])
    assert r.value == Fraction(-14, 5)
    assert r.x == [Fraction(8, 5), Fraction(6, 5)]


def test_equality_and_free():
    # min y with y free, y = x - 3, x <= 1
    r = solve_lp(2, {1: 1}, [[(0, 1)]], [1], [[(1, 1), (0, -1)]], [-3], free=[1])
    assert r.value == -3


def test_infeasible_unbounded():
    with pytest.raises(Infeasible):
        solve_lp(1, {0: 1}, [[(0, 1)]], [-1], [], [])
    with pytest.raises(Unbounded):
        solve_lp(1, {0: -1}, [], [], [], [])


def test_pivot_cap():
    with pytest.raises(Aborted):
        solve_lp(2, {0: -1, 1: -1}, [[(0, 1), (1, 2)], [(0, 3), (1, 1)]], [4, 6], [], [],
                 max_pivots=0)


def test_degenerate_cycling_example():
    # Beale's classic cycling instance
    cost = {0: Fraction(-3, 4), 1: 150, 2: Fraction(-1, 50), 3: 6}
    rows = [[(0, Fraction(1, 4)), (1, -60), (2, Fraction(-1, 25)), (3, 9)],
            [(0, Fraction(1, 2)), (1, -90), (2, Fraction(-1, 50)), (3, 3)],
            [(2, 1)]]
    r = solve_lp(4, cost, rows, [0, 0, 1], [], [])
    assert r.value == Fraction(-1, 20)


coef = st.integers(-4, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_against_scipy(nv, nr, data):
    sp = pytest.importorskip("scipy.optimize")
    A = [[data.draw(coef) for _ in range(nv)] for _ in range(nr)]
    b = [data.draw(st.integers(0, 6)) for _ in range(nr)]
    c = [data.draw(coef) for _ in range(nv)]
    # a box keeps it bounded
    rows = [[(j, a) for j, a in enumerate(r) if a] for r in A] + [[(j, 1)] for j in range(nv)]
    rhs = b + [5] * nv
    r = solve_lp(nv, dict(enumerate(c)), rows, rhs, [], [])
    ref = sp.linprog(c, A_ub=[list(map(float, r_)) for r_ in A] + [[float(i == j) for i in range(nv)] for j in range(nv)],
                     b_ub=rhs, bounds=[(0, None)] * nv, method="highs")
    assert abs(float(r.value) - ref.fun) < 1e-7
