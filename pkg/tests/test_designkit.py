import random
from collections import Counter
from itertools import combinations

import pytest

from ringgroom.designkit.errors import ConstructionFailure
from ringgroom.designkit.factorizations import (
    factor_pairing,
    near_one_factorization,
    near_one_factorization_minus_cycle,
    one_factorization,
    one_factorization_avoiding,
)
from ringgroom.designkit.headset import headset
from ringgroom.designkit.mon4 import build_mon_n4
from ringgroom.designkit.partitions import cocktail_matching, cocktail_partition, p3_partition
from ringgroom.designkit.search import decompose, exact_cover
from ringgroom.designkit.triples import TripleSystem, gdd3, pts_with_leave, steiner_triple_system
from ringgroom.formulas import cost_on_n4, mon_n4_profile
from ringgroom.model import ContractViolation, Shape, kite, triangle, verify


def random_pts(points: int, rng: random.Random) -> TripleSystem:
    free = set(combinations(range(points), 2))
    triples = []
    cand = list(combinations(range(points), 3))
    rng.shuffle(cand)
    for t in cand:
        es = set(combinations(t, 2))
        if es <= free and rng.random() < 0.7:
            free -= es
            triples.append(t)
    return TripleSystem(points, tuple(triples), frozenset(free)).check()


@pytest.mark.parametrize("m, count", [(2, 1), (4, 3), (8, 7)])
def test_one_factorization(m, count):
    fs = one_factorization(m).check()
    assert len(fs) == count and all(len(f) == m // 2 for f in fs)


def test_near_one_factorization():
    assert [len(f) for f in near_one_factorization(3)] == [1, 1, 1]
    fs = near_one_factorization(7)
    assert fs.missing_vertex == list(range(7)) and all(len(f) == 3 for f in fs)
    fs = near_one_factorization(5, "pairs_last")
    assert fs[4] == [(0, 1), (2, 3)]


def test_factorization_avoiding():
    fs = one_factorization_avoiding(8)
    assert len(fs) == 4 and all(len(f) == 4 for f in fs)
    assert len(one_factorization_avoiding(10)) == 6
    with pytest.raises(ContractViolation):
        one_factorization_avoiding(6)


def test_minus_cycle():
    fs = near_one_factorization_minus_cycle(7)
    assert sum(len(f) for f in fs) == 18
    fs = near_one_factorization_minus_cycle(9)
    assert len(fs) == 8 and all(len(f) == 4 for f in fs)
    with pytest.raises(ContractViolation):
        near_one_factorization_minus_cycle(5)


@pytest.mark.parametrize("v, count", [(3, 1), (7, 7), (9, 12), (13, 26)])
def test_sts(v, count):
    assert len(steiner_triple_system(v).check().triples) == count


def test_pts_with_leave():
    ts = pts_with_leave(11, "FOURCYCLE")
    assert len(ts.triples) == 17 and len(ts.leave) == 4
    assert len(pts_with_leave(9, ("CYCLE", 9)).triples) == 9
    assert len(pts_with_leave(7, ("CYCLE", 6)).triples) == 5
    assert len(pts_with_leave(12, "GRAPH_L").check().triples) * 3 + len(pts_with_leave(12, "GRAPH_L").leave) == 66


def test_gdd():
    assert len(gdd3(6, 3).check().triples) == 36
    assert len(gdd3(2, 6).check().triples) == 20
    with pytest.raises((ContractViolation, ConstructionFailure)):
        gdd3(6, 2)


def test_headset_examples():
    hs = headset(steiner_triple_system(7))
    assert all(hs.occurrences[i] == 1 for i in range(7))
    hs = headset(steiner_triple_system(9))
    assert set(hs.occurrences.values()) <= {1, 2} and sum(hs.occurrences.values()) == 12
    single = TripleSystem(3, ((0, 1, 2),), frozenset())
    assert headset(single).heads[0] in (0, 1, 2)


def test_headset_on_random_systems():
    rng = random.Random(7)
    for _ in range(60):
        ts = random_pts(rng.randint(3, 15), rng)
        headset(ts).check(ts)


def census(blocks):
    return Counter(b.shape for b in blocks)


@pytest.mark.parametrize("w", range(4, 16))
def test_cocktail(w):
    blocks = cocktail_partition(w)
    covered = [e for b in blocks for e in b.edges]
    assert len(covered) == len(set(covered))
    assert set(covered) | cocktail_matching(w) == set(combinations(range(w), 2))
    c = census(blocks)
    assert c[Shape.TRIANGLE] == (2 if w % 4 == 3 else 0)
    if w % 2 == 0:
        assert set(c) == {Shape.FOURCYCLE}


def test_cocktail_small_cases():
    assert set(cocktail_partition(5)) == {kite(2, 4, 0, 3), kite(3, 4, 1, 2)}
    assert census(cocktail_partition(6)) == {Shape.FOURCYCLE: 3}
    assert census(cocktail_partition(7)) == {Shape.KITE: 3, Shape.TRIANGLE: 2}


def test_p3_partition():
    assert census(p3_partition([(0, 1), (1, 2), (2, 3), (3, 4)])) == {Shape.P3: 2}
    assert census(p3_partition(triangle(0, 1, 2).edges)) == {Shape.P3: 1, Shape.EDGE: 1}
    hexagon = [(i, (i + 1) % 6) for i in range(6)]
    assert census(p3_partition(hexagon)) == {Shape.P3: 3}


def test_factor_pairing():
    f, g = [(0, 1), (2, 3)], [(1, 2), (0, 3)]
    sigma = factor_pairing(f, g)
    assert sorted(sigma) == f and sorted(sigma.values()) == sorted(g)
    assert all(set(e) & set(s) for e, s in sigma.items())
    with pytest.raises(ContractViolation):
        factor_pairing(f, f)
    path = factor_pairing([(0, 1), (2, 3)], [(1, 2), (3, 4)])
    assert path == {(0, 1): (1, 2), (2, 3): (3, 4)}


@pytest.mark.parametrize("n", [4, 5, 8, 9, 13])
def test_build_mon_n4(n):
    dec = build_mon_n4(n)
    r = verify(dec)
    assert r.valid and r.drop_cost == cost_on_n4(n)
    assert (r.wavecost, r.triangle_count) == mon_n4_profile(n)


def test_mon_n4_with_four_triangles():
    r = verify(build_mon_n4(8, triangle_target=4))
    assert r.valid and r.triangle_count == 4
    with pytest.raises(ConstructionFailure):
        build_mon_n4(8, triangle_target=1)


def test_search_helpers_agree():
    edges = list(combinations(range(7), 2))
    blocks = decompose(edges, triangles=3)
    assert blocks and sum(b.shape is Shape.TRIANGLE for b in blocks) == 3
    blocks = exact_cover(edges, triangles=3)
    assert blocks and sorted(e for b in blocks for e in b.edges) == edges
    assert exact_cover(edges, triangles=0) is None
