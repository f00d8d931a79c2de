from math import ceil, comb

import pytest

from ringgroom.formulas import (
    Unsupported,
    cost_on_n4,
    cost_two_period,
    mon_n4_profile,
    mu3,
    neutral_edge_bound,
    triangle_lower_bound,
    wavecost_mon,
)


@pytest.mark.parametrize("n, want", [(2, 2), (3, 3), (4, 7), (5, 10), (9, 36)])
def test_cost_on_n4(n, want):
    assert cost_on_n4(n) == want


@pytest.mark.parametrize("n, want", [(8, (7, 0)), (7, (6, 3)), (6, (4, 1)), (4, (2, 0))])
def test_mon_n4_profile(n, want):
    assert mon_n4_profile(n) == want


@pytest.mark.parametrize("args, want", [((7, 4, 1), 21), ((7, 5, 2), 22), ((7, 5, 1), 26)])
def test_cost_examples(args, want):
    assert cost_two_period(*args) == want


def test_w4_correction_applies():
    # v even, v > 2w, w = 4
    plain = comb(14, 2) + ceil(comb(10, 2) / 2) - 10 * 4 // 2
    assert cost_two_period(14, 10, 2) == plain + 1


def test_degenerate_v_equals_n():
    assert cost_two_period(6, 6, 1) == 2 * comb(6, 2)
    assert cost_two_period(6, 6, 2) == comb(6, 2) + ceil(comb(6, 2) / 2)
    with pytest.raises(Unsupported):
        cost_two_period(6, 6, 3)


@pytest.mark.parametrize("args, want", [((5, 2, 1), 5), ((5, 2, 2), 9), ((0, 3, 1), 0)])
def test_neutral_edge_bound(args, want):
    assert neutral_edge_bound(*args) == want


@pytest.mark.parametrize("v, w, want", [(11, 2, 2), (7, 2, 0), (13, 1, 13)])
def test_delta_min(v, w, want):
    assert triangle_lower_bound(v, w).delta_min == want


def test_delta_min_invariants():
    for n in range(5, 41):
        for v in range(n):
            tb = triangle_lower_bound(v, n - v)
            assert tb.delta_min % 4 == tb.residue
            assert max(0, ceil(tb.l_value)) <= tb.delta_min <= tb.slack_ceiling


def test_small_delta_threshold():
    for v in range(4, 40):
        lo = ceil((v - 1) / 6) if v % 2 else ceil((v + 3) / 6)
        for w in range(max(1, lo), v + 1):
            assert triangle_lower_bound(v, w).delta_min <= 3
    # one vertex of W is not enough for v = 8
    assert triangle_lower_bound(8, 1).delta_min == 8


@pytest.mark.parametrize("args, want", [((7, 5, 1), 10), ((9, 7, 3), 9)])
def test_wavecost_examples(args, want):
    assert wavecost_mon(*args) == want


def test_wavecost_small_v_delegates():
    for n in range(5, 30):
        for v in range(0, n // 2 + 1):
            assert wavecost_mon(n, v, 1) == mon_n4_profile(n)[0]


@pytest.mark.parametrize("v, want", [(9, 1), (10, 2), (16, 4), (4, 1), (6, 1)])
def test_mu3(v, want):
    assert mu3(v) == want


def test_cost_chain():
    for n in range(5, 41):
        for v in range(n):
            c1, c2, c3 = (cost_two_period(n, v, c) for c in (1, 2, 3))
            assert c1 >= c2 >= c3 == cost_on_n4(n)
            if v <= n - v + 1:
                assert c1 == comb(n, 2)
            if v <= 2 * (n - v):
                assert c2 == comb(n, 2)


def test_out_of_domain():
    with pytest.raises(Unsupported):
        cost_two_period(4, 2, 1)
    with pytest.raises(Unsupported):
        cost_two_period(7, 2, 4)
    with pytest.raises(Unsupported):
        mu3(3)
