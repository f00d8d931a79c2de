"""Acceptance suite: one PASS/FAIL line per criterion, exact equality throughout."""

import random
import time
from collections import Counter
from itertools import combinations
from math import ceil, comb

import pytest

from ringgroom.constructions import BuildRequest, build, fixture, fixture_info, fixture_names
from ringgroom.constructions import fixtures as fixture_store
from ringgroom.designkit.factorizations import (
    near_one_factorization,
    near_one_factorization_minus_cycle,
    one_factorization,
    one_factorization_avoiding,
)
from ringgroom.designkit.headset import headset
from ringgroom.designkit.mon4 import build_mon_n4
from ringgroom.designkit.partitions import cocktail_matching, cocktail_partition
from ringgroom.designkit.triples import TripleSystem, gdd3, pts_with_leave, steiner_triple_system
from ringgroom.formulas import (
    cost_two_period,
    mon_n4_profile,
    mu3,
    triangle_lower_bound,
    wavecost_mon,
)
from ringgroom.model import ProblemInstance, Shape, verify
from ringgroom.oracle import solve_min_cost, solve_min_triangles

N_MAX = 40


@pytest.fixture
def report(capsys):
    def emit(k: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
        assert ok, detail

    return emit


def cells(n_lo: int, n_hi: int):
    for n in range(n_lo, n_hi + 1):
        for cp in (1, 2, 3):
            for v in range(n + 1):
                if cp == 3 and v == n:
                    continue
                yield n, v, cp


def test_criterion_1_fixtures(report):
    fixture_store._load.cache_clear()
    t0 = time.perf_counter()
    bad = []
    for name in fixture_names():
        info, r = fixture_info(name), verify(fixture(name))
        if not r.valid or (r.drop_cost, r.triangle_count, r.wavecost) != (info.cost, info.triangles, info.wavecost):
            bad.append(name)
    costs = {k: verify(fixture(k)).drop_cost for k in ("Ex1", "Ex2", "Ex3")}
    on84 = verify(fixture("C.ON(8,4)"))
    mon74 = verify(fixture("C.MON(7+4,7;4,2)"))
    dt = time.perf_counter() - t0
    ok = (
        not bad
        and costs == {"Ex1": 21, "Ex2": 22, "Ex3": 26}
        and on84.valid
        and on84.triangle_count == 4
        and mon74.valid
        and dt < 1.0
    )
    report(1, ok, f"{len(fixture_names())} fixtures valid, bad={bad}, examples {costs}, {dt:.2f}s")


def test_criterion_2_oracle_matches_formula(report):
    t0 = time.perf_counter()
    bad, count = [], 0
    for n, v, cp in cells(5, 8):
        res = solve_min_cost(ProblemInstance(n, v, cp))
        count += 1
        if res.time_limit_hit or res.optimum_cost != cost_two_period(n, v, cp) or not verify(res.witness).valid:
            bad.append((n, v, cp, res.optimum_cost))
    examples = [solve_min_cost(ProblemInstance(*a)).optimum_cost for a in ((7, 4, 2), (7, 5, 2), (7, 5, 1))]
    ok = not bad and examples == [21, 22, 26]
    report(2, ok, f"{count} instances with n <= 8, mismatches={bad}, examples {examples}, "
                  f"{time.perf_counter() - t0:.1f}s")


def _sweep(mon: bool):
    rows = []
    for n, v, cp in cells(5, N_MAX):
        dec = build(BuildRequest(ProblemInstance(n, v, cp), mon))
        rows.append(((n, v, cp), dec, verify(dec)))
    return rows


def test_criterion_3_construction_sweep(report):
    t0 = time.perf_counter()
    rows = _sweep(mon=False)
    bad = [key for key, _, r in rows if not r.valid or r.drop_cost != cost_two_period(*key)]
    dt = time.perf_counter() - t0
    report(3, not bad and dt <= 600, f"{len(rows)} ON builds for 5 <= n <= {N_MAX}, mismatches={bad[:5]}, {dt:.1f}s")


def test_criterion_4_mon_sweep(report):
    t0 = time.perf_counter()
    rows = _sweep(mon=True)
    bad = []
    by_key = {}
    for (n, v, cp), dec, r in rows:
        by_key[(n, v, cp)] = r
        good = r.valid and r.drop_cost == cost_two_period(n, v, cp) and r.wavecost == wavecost_mon(n, v, cp)
        if cp == 3:
            tb = triangle_lower_bound(v, n - v)
            good = good and r.triangle_count % 4 == (3 * comb(n, 2)) % 4
            good = good and r.triangle_count <= tb.slack_ceiling and r.triangle_count == tb.delta_min
        if not good:
            bad.append((n, v, cp))
    spots = (by_key[(13, 11, 3)].triangle_count, by_key[(9, 7, 3)].wavecost)
    dt = time.perf_counter() - t0
    ok = not bad and spots == (2, 9) and dt <= 600
    report(4, ok, f"{len(rows)} MON builds, mismatches={bad[:5]}, (11,2) triangles {spots[0]}, "
                  f"(7,2) wavecost {spots[1]}, {dt:.1f}s")


def test_criterion_5_oracle_delta_min(report):
    bad, count = [], 0
    for n in range(5, 8):
        for v in range(n):
            res = solve_min_triangles(ProblemInstance(n, v, 3))
            count += 1
            want = triangle_lower_bound(v, n - v).delta_min
            if res.time_limit_hit or res.optimum_triangles_at_cost != want:
                bad.append((n, v, res.optimum_triangles_at_cost, want))
    report(5, not bad, f"{count} instances with n <= 7, mismatches={bad}")


def _random_pts(rng: random.Random) -> TripleSystem:
    points = rng.randint(3, 15)
    free = set(combinations(range(points), 2))
    cand = list(combinations(range(points), 3))
    rng.shuffle(cand)
    keep = rng.random()
    triples = []
    for t in cand:
        es = set(combinations(t, 2))
        if es <= free and rng.random() < keep:
            free -= es
            triples.append(t)
    return TripleSystem(points, tuple(triples), frozenset(free)).check()


def _cocktail_ok(w: int) -> bool:
    blocks = cocktail_partition(w)
    edges = [e for b in blocks for e in b.edges]
    if len(edges) != len(set(edges)) or set(edges) | cocktail_matching(w) != set(combinations(range(w), 2)):
        return False
    shapes = Counter(b.shape for b in blocks)
    if w % 2 == 0:
        return set(shapes) == {Shape.FOURCYCLE}
    allowed = {Shape.KITE, Shape.FOURCYCLE, Shape.TRIANGLE}
    return set(shapes) <= allowed and shapes[Shape.TRIANGLE] == (0 if w % 4 == 1 else 2)


def _generators_ok() -> list[str]:
    failed = []
    checks = []
    for m in range(2, 42, 2):
        checks.append((f"1F({m})", lambda m=m: one_factorization(m).check()))
        if m >= 4 and (m % 4 == 0 or m >= 10):
            checks.append((f"1F-avoid({m})", lambda m=m: one_factorization_avoiding(m).check()))
    for m in range(3, 42, 2):
        checks.append((f"N1F({m})", lambda m=m: near_one_factorization(m).check()))
        for p in ("pairs_last", "offset_middle"):
            checks.append((f"N1F({m},{p})", lambda m=m, p=p: near_one_factorization(m, p).check()))
        if m >= 7:
            checks.append((f"N1F-C({m})", lambda m=m: near_one_factorization_minus_cycle(m).check()))
    for v in range(3, 42):
        if v % 6 in (1, 3):
            checks.append((f"STS({v})", lambda v=v: steiner_triple_system(v).check()))
        if v % 6 == 5:
            checks.append((f"PTS-C4({v})", lambda v=v: pts_with_leave(v, "FOURCYCLE").check()))
        if v % 2 == 0 and v >= 6:
            checks.append((f"PTS-L({v})", lambda v=v: pts_with_leave(v, "GRAPH_L").check()))
    for u in range(3, 7):
        checks.append((f"GDD(6^{u})", lambda u=u: gdd3(6, u).check()))
    for u in range(3, 21):
        if u % 3 != 2:
            checks.append((f"GDD(2^{u})", lambda u=u: gdd3(2, u).check()))
    for name, fn in checks:
        try:
            fn()
        except Exception:  # any failure counts against the suite
            failed.append(name)
    return failed


def test_criterion_6_designkit_properties(report):
    t0 = time.perf_counter()
    cocktail_bad = [w for w in range(4, 26) if not _cocktail_ok(w)]
    rng = random.Random(2024)
    headset_bad = 0
    for _ in range(1000):
        ts = _random_pts(rng)
        try:
            headset(ts).check(ts)
        except Exception:
            headset_bad += 1
    gen_bad = _generators_ok()
    mon_bad = []
    for n in range(4, 41):
        r = verify(build_mon_n4(n))
        if not r.valid or (r.wavecost, r.triangle_count) != mon_n4_profile(n):
            mon_bad.append(n)
    dt = time.perf_counter() - t0
    ok = not (cocktail_bad or headset_bad or gen_bad or mon_bad) and dt <= 300
    report(6, ok, f"cocktail bad={cocktail_bad}, headset failures={headset_bad}/1000, "
                  f"generator failures={gen_bad}, MON(n,4) bad={mon_bad}, {dt:.1f}s")


def test_criterion_7_mu3_consistency(report):
    bad = []
    for v in range(4, 41):
        for w in range(1, v + 1):
            n = v + w
            floor_hit = wavecost_mon(n, v, 3) == ceil(n * (n - 1) / 8)
            if floor_hit != (w >= mu3(v)):
                bad.append((v, w))
    report(7, not bad, f"4 <= v <= 40, 1 <= w <= v, mismatches={bad}")
