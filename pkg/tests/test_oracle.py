import pytest

from ringgroom.formulas import cost_two_period, triangle_lower_bound
from ringgroom.model import ContractViolation, ProblemInstance, verify
from ringgroom.oracle import BUDGET_ENV, Budget, solve_min_cost, solve_min_triangles


@pytest.mark.parametrize(
    "inst, want",
    [((7, 4, 2), 21), ((7, 5, 1), 26), ((4, 0, 4), 7), ((7, 4, 1), 21), ((7, 5, 2), 22)],
)
def test_min_cost_examples(inst, want):
    res = solve_min_cost(ProblemInstance(*inst))
    assert res.optimum_cost == want and not res.time_limit_hit
    r = verify(res.witness)
    assert r.valid and r.drop_cost == want


@pytest.mark.parametrize("v", range(5))
def test_n5_cprime3(v):
    assert solve_min_cost(ProblemInstance(5, v, 3)).optimum_cost == 10


@pytest.mark.parametrize("v, w, want", [(7, 2, 0), (5, 1, 1)])
def test_min_triangles_examples(v, w, want):
    budget = Budget(extended=True)
    res = solve_min_triangles(ProblemInstance(v + w, v, 3), budget=budget)
    assert res.optimum_triangles_at_cost == want
    assert verify(res.witness).triangle_count == want


def test_min_triangles_matches_bound():
    res = solve_min_triangles(ProblemInstance(7, 5, 3))
    assert res.optimum_triangles_at_cost == triangle_lower_bound(5, 2).delta_min


@pytest.mark.parametrize("n", [5, 6])
def test_matches_formula(n):
    for cp in (1, 2, 3):
        for v in range(n + (cp != 3)):
            assert solve_min_cost(ProblemInstance(n, v, cp)).optimum_cost == cost_two_period(n, v, cp)


def test_deterministic():
    a = solve_min_cost(ProblemInstance(7, 3, 2))
    b = solve_min_cost(ProblemInstance(7, 3, 2))
    assert a.nodes_explored == b.nodes_explored
    assert a.witness.canonical() == b.witness.canonical()


def test_size_limit():
    with pytest.raises(ContractViolation):
        solve_min_cost(ProblemInstance(9, 3, 2))
    with pytest.raises(ContractViolation):
        solve_min_triangles(ProblemInstance(6, 3, 3), fixed_cost=16)


def test_budget_exhaustion_reports_incumbent():
    res = solve_min_cost(ProblemInstance(8, 5, 1), Budget(nodes=40))
    assert res.time_limit_hit
    assert verify(res.witness).valid and res.optimum_cost >= cost_two_period(8, 5, 1)


def test_env_budget(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "30")
    assert solve_min_cost(ProblemInstance(8, 5, 1)).time_limit_hit
    monkeypatch.delenv(BUDGET_ENV)
    assert not solve_min_cost(ProblemInstance(8, 5, 1)).time_limit_hit
