import json

import pytest

from ringgroom.constructions import fixture
from ringgroom.model import (
    Block,
    ContractViolation,
    Decomposition,
    EdgeClass,
    ProblemInstance,
    Shape,
    Wavelength,
    classify_edge,
    count_triangles,
    drop_cost,
    edge_block,
    fourcycle,
    kite,
    path,
    triangle,
    verify,
)


def kinds(dec):
    return {v.kind for v in verify(dec).violations}


@pytest.mark.parametrize(
    "block, shape",
    [
        (edge_block(0, 1), Shape.EDGE),
        (path(0, 1, 2), Shape.P3),
        (path(0, 1, 2, 3), Shape.P4),
        (triangle(0, 1, 2), Shape.TRIANGLE),
        (fourcycle(0, 1, 2, 3), Shape.FOURCYCLE),
        (kite(0, 1, 2, 3), Shape.KITE),
        (Block(((0, 1), (0, 2), (0, 3))), Shape.OTHER),
    ],
)
def test_shapes(block, shape):
    assert block.shape is shape


def test_block_is_canonical():
    assert Block(((2, 1), (0, 1))) == Block(((0, 1), (1, 2)))
    assert kite(0, 1, 2, 3).vertices == frozenset(range(4))


def test_instance_contract():
    inst = ProblemInstance(7, 4, 2)
    assert inst.w == 3 and list(inst.W) == [4, 5, 6] and inst.w_vertex(0) == 4
    for bad in [(0, 0, 1), (5, 6, 1), (5, 2, 5)]:
        with pytest.raises(ContractViolation):
            ProblemInstance(*bad)
    with pytest.raises(ContractViolation):
        ProblemInstance(5, 2, 1, groom_c=3)


def test_classify_edge():
    i4, i5 = ProblemInstance(7, 4, 1), ProblemInstance(7, 5, 2)
    assert classify_edge(i4, (0, 1), triangle(5, 0, 1)) is EdgeClass.NEUTRAL
    assert classify_edge(i5, (3, 0), edge_block(0, 3)) is EdgeClass.POSITIVE
    assert classify_edge(i4, (0, 4), triangle(0, 4, 5)) is EdgeClass.CROSS
    assert classify_edge(i4, (5, 6), triangle(4, 5, 6)) is EdgeClass.WITHIN_W
    with pytest.raises(ContractViolation):
        classify_edge(i4, (0, 2), triangle(5, 0, 1))


def test_example_one(ex1):
    r = verify(ex1)
    assert r.valid and r.drop_cost == 21 and r.wavecost == 6
    assert count_triangles(ex1) == 3 and drop_cost(ex1) == 21


def test_duplicate_edge_detected():
    inst = ProblemInstance(3, 0, 4)
    dec = Decomposition.from_blocks(inst, [triangle(0, 1, 2), edge_block(0, 1)])
    assert "DUPLICATE_EDGE" in kinds(dec)


def test_missing_edge_detected():
    dec = Decomposition.from_blocks(ProblemInstance(4, 0, 4), [triangle(0, 1, 2)])
    assert "MISSING_EDGE" in kinds(dec)


def test_example_two_needs_cprime_two():
    ex2 = fixture("Ex2")
    assert verify(ex2).valid
    assert "V_CAPACITY" in kinds(ex2.with_instance(ProblemInstance(7, 5, 1)))


def test_drop_cost_of_shared_wavelength():
    # a P2 on V beside a disjoint triangle on W
    inst = ProblemInstance(5, 2, 2)
    wl = Wavelength((edge_block(0, 1), triangle(2, 3, 4)))
    dec = Decomposition(inst, (wl,))
    assert drop_cost(dec) == 5
    assert drop_cost(Decomposition.from_blocks(inst, [triangle(2, 3, 4)])) == 3


def test_shared_vertex_rejected():
    inst = ProblemInstance(5, 0, 4)
    wl = Wavelength((edge_block(0, 1), edge_block(1, 2)))
    assert "SHARED_VERTEX" in kinds(Decomposition(inst, (wl,)))


def test_wavelength_capacity():
    inst = ProblemInstance(6, 0, 4)
    wl = Wavelength((triangle(0, 1, 2), path(3, 4, 5)))
    assert "CAPACITY" in kinds(Decomposition(inst, (wl,)))


def test_bad_vertex_and_loop():
    inst = ProblemInstance(3, 0, 4)
    assert "BAD_VERTEX" in kinds(Decomposition.from_blocks(inst, [edge_block(0, 7)]))
    assert "LOOP" in kinds(Decomposition.from_blocks(inst, [Block(((1, 1),))]))


def test_example_three_cost():
    assert drop_cost(fixture("Ex3")) == 26


def test_json_round_trip(ex1):
    text = ex1.to_json()
    back = Decomposition.from_json(text)
    assert back.canonical() == ex1.canonical()
    assert json.loads(text)["n"] == 7


def test_monotone_in_cprime(ex1):
    assert verify(ex1.with_instance(ProblemInstance(7, 4, 2))).valid


def test_neutral_bound_on_report():
    r = verify(fixture("Ex2"))
    assert r.neutral_edges <= 2 * 5 * 2 // 2
