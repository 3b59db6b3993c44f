import pytest

from usoclash.cube import Aborted, InvalidArgument
from usoclash.game import GameSearch, compute_t, player_wins

import oracles


@pytest.mark.parametrize("n,q,want", [(1, 1, False), (1, 2, True), (2, 2, False), (2, 3, True),
                                      (3, 4, False), (3, 5, True)])
def test_player_wins_small(n, q, want):
    assert player_wins(n, q) is want


def test_player_wins_n4():
    assert player_wins(4, 6) is False
    assert player_wins(4, 7) is True


def test_compute_t_values():
    assert compute_t(1, 4) == 2
    assert compute_t(2, 5) == 3
    assert compute_t(3, 6) == 5
    assert compute_t(4, 8) == 7


def test_compute_t_cap_report():
    assert compute_t(3, 4) == ">= 5"


def test_matches_naive_minimax():
    for n, qs in ((1, (1, 2, 3)), (2, (1, 2, 3, 4))):
        for q in qs:
            assert player_wins(n, q) == oracles.naive_player_wins(n, q)


@pytest.mark.parametrize("reduce,canonical,kernel", [(False, False, False), (False, True, True),
                                                     (True, False, False), (True, True, False)])
def test_variants_agree(reduce, canonical, kernel):
    for n, qs in ((2, (2, 3)), (3, (4, 5))):
        for q in qs:
            g = GameSearch(n, reduce=reduce, canonical=canonical, use_kernel=kernel)
            assert g.wins(q) == player_wins(n, q)


def test_monotone():
    for n in (1, 2, 3):
        res = [player_wins(n, q) for q in range(1, 7)]
        assert res == sorted(res)


def test_not_above_seesaw():
    from usoclash.solvers import seesaw_bound
    for n in (1, 2, 3, 4):
        assert compute_t(n, 8) <= seesaw_bound(n)


def test_limits_abort():
    with pytest.raises(Aborted):
        GameSearch(4, node_limit=0).wins(7)
    with pytest.raises(InvalidArgument):
        compute_t(5, 10)
    with pytest.raises(InvalidArgument):
        player_wins(2, 0)


@pytest.mark.slow
def test_t5_lower_bound():
    # the player cannot force a verdict with 10 queries at n=5
    assert player_wins(5, 10, time_limit=24 * 3600) is False
