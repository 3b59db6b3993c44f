import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from usoclash.constructions import (InheritedUndefined, flip_matching, flippable_edges,
                                    hypervertex_replace, inherited, is_hypervertex,
                                    partial_swap, product, random_uso, xor_relabel)
from usoclash.cube import (FaceSpec, OutmapTable, PreconditionViolated, all_faces,
                           enumerate_usos, face_sink, is_uso)

USO1 = enumerate_usos(1)
USO2 = enumerate_usos(2)
USO3 = enumerate_usos(3)


def test_xor_relabel_examples():
    u = OutmapTable.uniform(2)
    assert xor_relabel(u, 0) == u
    s = xor_relabel(u, 3)
    assert face_sink(s, FaceSpec(0, 3)) == 3


def test_xor_relabel_preserves_and_involutes():
    for s in USO3:
        for z in range(8):
            t = xor_relabel(s, z)
            assert is_uso(t)
            assert xor_relabel(t, z) == s


def test_inherited_examples():
    assert inherited(OutmapTable.uniform(3), 0b001) == OutmapTable.uniform(1)
    with pytest.raises(InheritedUndefined):
        inherited(OutmapTable(2, [3, 3, 3, 3]), 0b01)


def test_inherited_exhaustive_n3():
    for s in USO3:
        for I in range(1, 8):
            assert is_uso(inherited(s, I))


def test_product_examples():
    s = product(USO1[0], {0: USO1[0], 1: USO1[1]})
    assert is_uso(s)
    # outer dimension is combed
    assert len({x >> 1 for x in s.values[:2]}) == 1
    t = product(USO1[1], {0: USO2[0], 1: USO2[5]})
    assert is_uso(t) and t.n == 3
    with pytest.raises(Exception):
        product(USO1[0], {0: USO1[0]})


def test_product_then_inherited_roundtrip():
    rng = random.Random(3)
    for _ in range(1000):
        outer = rng.choice(USO3)
        inner = {u: rng.choice(USO2) for u in range(8)}
        s = product(outer, inner)
        assert s.n == 5 and is_uso(s)
        assert inherited(s, 0b11100) == outer


def test_hypervertex_predicate():
    u = OutmapTable.uniform(3)
    assert is_hypervertex(u, FaceSpec(5, 0))
    assert is_hypervertex(USO3[7], FaceSpec(0, 7))
    comb = product(USO1[1], {0: USO2[3], 1: USO2[8]})
    assert is_hypervertex(comb, FaceSpec(0, 0b011))
    assert is_hypervertex(comb, FaceSpec(4, 0b011))


def test_hypervertex_replace_whole_cube_and_facets():
    for r in USO3[:20]:
        assert hypervertex_replace(USO3[0], FaceSpec(0, 7), r) == r
    comb = product(USO1[0], {0: USO2[1], 1: USO2[4]})
    for r in USO2:
        for base in (0, 4):
            assert is_uso(hypervertex_replace(comb, FaceSpec(base, 0b011), r))
    with pytest.raises(PreconditionViolated):
        hypervertex_replace(OutmapTable(2, [0, 3, 2, 1]), FaceSpec(0, 1), USO1[0])


def test_hypervertex_replace_exhaustive_n3():
    by_dim = {0: [OutmapTable(0, [0])], 1: USO1, 2: USO2, 3: USO3}
    for s in USO3:
        for f in all_faces(3):
            if not is_hypervertex(s, f):
                continue
            k = bin(f.dims).count("1")
            for r in by_dim[k][:12]:
                assert is_uso(hypervertex_replace(s, f, r))


def _brute_flippable(s):
    out = []
    for u in range(len(s.values)):
        for v in range(u + 1, len(s.values)):
            d = u ^ v
            if d & (d - 1) == 0 and (s.values[u] & ~d) == (s.values[v] & ~d):
                out.append((u, v))
    return out


def test_flippable_edges():
    assert sorted(flippable_edges(OutmapTable.uniform(2))) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert flippable_edges(USO1[0]) == [(0, 1)]
    for s in USO3:
        assert sorted(flippable_edges(s)) == _brute_flippable(s)


def test_flip_matching_family_values():
    u = OutmapTable.uniform(3)
    m = [(1 << i, (1 << i) | (1 << ((i + 1) % 3))) for i in range(3)]
    # (e1, e1|e2), (e2, e2|e3), (e3, e3|e1): disjoint since the partners are distinct
    t = flip_matching(u, m)
    assert is_uso(t)
    for i in range(3):
        e = 1 << i
        assert t.values[e] == e | (1 << ((i + 1) % 3))


def test_flip_matching_single_edges_and_involution():
    for s in USO3:
        assert flip_matching(s, []) == s
        for e in flippable_edges(s):
            t = flip_matching(s, [e])
            assert is_uso(t)
            assert flip_matching(t, [e]) == s


def test_flip_matching_errors():
    u = OutmapTable.uniform(2)
    with pytest.raises(PreconditionViolated):
        flip_matching(u, [(0, 1), (1, 3)])
    with pytest.raises(PreconditionViolated):
        flip_matching(u, [(0, 3)])
    with pytest.raises(PreconditionViolated):
        flip_matching(OutmapTable(2, [0, 3, 2, 1]), [(0, 1)])


def test_partial_swap_examples():
    assert partial_swap(OutmapTable(1, [1, 0]), 1) == OutmapTable(1, [0, 1])
    s = OutmapTable(2, [0, 1, 2, 3])   # u_i = s(u)_i everywhere
    assert partial_swap(s, 1) == s and partial_swap(s, 2) == s


def test_partial_swap_exhaustive_n3():
    for s in USO3:
        for i in (1, 2, 3):
            assert is_uso(partial_swap(s, i))


def test_random_uso_is_uso_and_deterministic():
    for n in range(2, 7):
        for seed in range(1000 if n <= 4 else 200):
            s = random_uso(n, seed)
            assert is_uso(s)
    assert random_uso(5, 9) == random_uso(5, 9)
    assert {random_uso(1, k) for k in range(20)} <= set(USO1)


@settings(max_examples=200, deadline=None)
@given(st.integers(4, 5), st.integers(0, 10 ** 6), st.integers(0, 31))
def test_constructions_preserve_uso_random(n, seed, z):
    s = random_uso(n, seed)
    assert is_uso(xor_relabel(s, z % (1 << n)))
    assert is_uso(partial_swap(s, 1 + z % n))
    for I in (1, (1 << n) - 2, z % (1 << n) or 1):
        assert is_uso(inherited(s, I))
    edges = flippable_edges(s)
    if edges:
        assert is_uso(flip_matching(s, [edges[z % len(edges)]]))
