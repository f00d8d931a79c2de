"""1-factorizations and near 1-factorizations with the prescriptions the builders need."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from ..model import Edge, norm_edge
from .coloring import color_classes
from .errors import ConstructionFailure, ContractViolation


@dataclass
class FactorSet:
    host_order: int
    factors: list[list[Edge]]
    missing_vertex: list[int | None] = field(default_factory=list)
    removed_subgraph: frozenset = frozenset()

    def __post_init__(self):
        self.factors = [sorted(norm_edge(*e) for e in f) for f in self.factors]
        if not self.missing_vertex:
            self.missing_vertex = [self._missing(f) for f in self.factors]

    def _missing(self, f) -> int | None:
        covered = {x for e in f for x in e}
        rest = [x for x in range(self.host_order) if x not in covered]
        return rest[0] if len(rest) == 1 else None

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def check(self) -> "FactorSet":
        """Raise unless the factors exactly cover K_m minus the removed subgraph."""
        m = self.host_order
        removed = {norm_edge(*e) for e in self.removed_subgraph}
        seen: set[Edge] = set()
        for i, f in enumerate(self.factors):
            covered = [x for e in f for x in e]
            if len(covered) != len(set(covered)):
                raise ConstructionFailure("FactorSet", f"factor {i} is not a matching")
            expected = m // 2
            if len(f) != expected:
                raise ConstructionFailure("FactorSet", f"factor {i} has {len(f)} edges, need {expected}")
            if m % 2 == 1:
                miss = set(range(m)) - set(covered)
                if miss != {self.missing_vertex[i]}:
                    raise ConstructionFailure("FactorSet", f"factor {i} misses {miss}")
            for e in f:
                if e in seen or e in removed:
                    raise ConstructionFailure("FactorSet", f"edge {e} repeated or removed")
                seen.add(e)
        want = {e for e in combinations(range(m), 2)} - removed
        if seen != want:
            raise ConstructionFailure("FactorSet", "factors do not cover the host graph")
        return self


def relabel_factors(fs: FactorSet, mapping: Sequence[int] | dict) -> FactorSet:
    removed = frozenset(norm_edge(mapping[a], mapping[b]) for a, b in fs.removed_subgraph)
    return FactorSet(
        fs.host_order,
        [[(mapping[a], mapping[b]) for a, b in f] for f in fs.factors],
        [None if x is None else mapping[x] for x in fs.missing_vertex],
        removed,
    )


def one_factorization(m: int) -> FactorSet:
    """Round-robin 1-factorization of K_m, m even."""
    if m < 2 or m % 2:
        raise ContractViolation(f"one_factorization needs even m >= 2, got {m}")
    r = m - 1
    inf = m - 1
    factors = []
    for i in range(r):
        f = [(i, inf)]
        for k in range(1, m // 2):
            f.append(((i - k) % r, (i + k) % r))
        factors.append(f)
    return FactorSet(m, factors).check()


def hamiltonian_tail_factorization(m: int) -> FactorSet:
    """1-factorization of K_m whose last two factors are {2h,2h+1} and {2h+1,2h+2 mod m}."""
    fs = one_factorization(m)
    if m == 2:
        return fs
    # consecutive round-robin factors F_0, F_1 form a Hamilton cycle
    f0 = {x: y for a, b in fs[0] for x, y in ((a, b), (b, a))}
    f1 = {x: y for a, b in fs[1] for x, y in ((a, b), (b, a))}
    order = [0]
    use0 = True
    while len(order) < m:
        x = order[-1]
        order.append(f0[x] if use0 else f1[x])
        use0 = not use0
    mapping = {x: i for i, x in enumerate(order)}
    fs = relabel_factors(fs, mapping)
    fs.factors = fs.factors[2:] + fs.factors[:2]
    fs.missing_vertex = fs.missing_vertex[2:] + fs.missing_vertex[:2]
    return fs.check()


def near_one_factorization(m: int, prescription: str | None = None) -> FactorSet:
    """Near 1-factorization F_0..F_{m-1} of K_m (m odd) with F_i missing i.

    ``prescription``:
      * ``"pairs_last"`` -- F_{m-1} = {{2h, 2h+1} : h < (m-1)/2};
      * ``"offset_middle"`` -- with m = 2t+1, F_t = {{k, t+k+1} : k < t}.
    Relabelling preserves "F_i misses i", so both are obtained by permuting
    the rotational factorization.
    """
    if m < 1 or m % 2 == 0:
        raise ContractViolation(f"near_one_factorization needs odd m, got {m}")
    factors = [[((i - k) % m, (i + k) % m) for k in range(1, (m - 1) // 2 + 1)] for i in range(m)]
    fs = FactorSet(m, factors, list(range(m)))
    if prescription is None or m == 1:
        return fs.check()
    half = (m - 1) // 2
    if prescription == "pairs_last":
        mapping = {m - 1: m - 1}
        for k in range(1, half + 1):
            mapping[k - 1] = 2 * (k - 1)
            mapping[m - 1 - k] = 2 * (k - 1) + 1
    elif prescription == "offset_middle":
        t = half
        mapping = {t: t}
        for k in range(1, t + 1):
            mapping[t - k] = k - 1
            mapping[t + k] = t + k
    else:
        raise ContractViolation(f"unknown prescription {prescription!r}")
    fs = relabel_factors(fs, mapping)
    order = sorted(range(m), key=lambda i: fs.missing_vertex[i])
    fs.factors = [fs.factors[i] for i in order]
    fs.missing_vertex = [fs.missing_vertex[i] for i in order]
    fs.check()
    if prescription == "pairs_last":
        want = sorted((2 * h, 2 * h + 1) for h in range(half))
        if fs.factors[m - 1] != want:
            raise ConstructionFailure("near_one_factorization", "prescription not met")
    else:
        t = half
        want = sorted((k, t + k + 1) for k in range(t))
        if fs.factors[t] != want:
            raise ConstructionFailure("near_one_factorization", "prescription not met")
    return fs


def _k4_packing_edges(groups: Iterable[Sequence[int]]) -> set[Edge]:
    out = set()
    for g in groups:
        out |= {norm_edge(a, b) for a, b in combinations(g, 2)}
    return out


def avoiding_graph(v: int) -> tuple[list[list[int]], tuple | None]:
    """The graph R of disjoint K4s (plus one K3,3 when v = 2 mod 4) used for v = 2w+2."""
    if v % 2 or v < 4:
        raise ContractViolation(f"avoiding_graph needs even v >= 4, got {v}")
    if v % 4 == 0:
        return [list(range(4 * i, 4 * i + 4)) for i in range(v // 4)], None
    if v < 10:
        raise ContractViolation("the K4 + K3,3 shape needs v >= 10 when v = 2 (mod 4)")
    k = (v - 6) // 4
    k4s = [list(range(4 * i, 4 * i + 4)) for i in range(k)]
    base = 4 * k
    return k4s, ((base, base + 1, base + 2), (base + 3, base + 4, base + 5))


def one_factorization_avoiding(v: int, removed: Iterable[Edge] | None = None, seed: int = 0) -> FactorSet:
    """1-factorization of K_v minus R (disjoint K4s, or K4s plus one K3,3)."""
    if removed is None:
        k4s, k33 = avoiding_graph(v)
        removed = _k4_packing_edges(k4s)
        if k33:
            removed |= {norm_edge(a, b) for a in k33[0] for b in k33[1]}
    removed = {norm_edge(*e) for e in removed}
    deg = [0] * v
    for a, b in removed:
        deg[a] += 1
        deg[b] += 1
    if v % 2 or len(set(deg)) != 1 or deg[0] != 3:
        raise ContractViolation("removed graph must be a cubic spanning graph of K_v, v even")
    host = [e for e in combinations(range(v), 2) if e not in removed]
    classes = color_classes(host, v - 4, seed)
    return FactorSet(v, classes, [None] * len(classes), frozenset(removed)).check()


def cycle_edges(t: int) -> set[Edge]:
    return {norm_edge(i, (i + 1) % t) for i in range(t)}


def near_one_factorization_minus_cycle(v: int, w: int | None = None, seed: int = 0) -> FactorSet:
    """Near 1-factorization of K_v minus the cycle (0, 1, ..., t-1), v = 2t+1.

    There are v-1 factors.  Factor i (for i < w) misses vertex floor(i/2);
    the remaining factors follow in order of their missing vertex.
    """
    if v % 2 == 0:
        raise ContractViolation(f"v must be odd, got {v}")
    t = (v - 1) // 2
    if t < 3:
        raise ContractViolation(f"needs t >= 3 (v >= 7), got v={v}")
    if w is None:
        w = t
    if not 0 <= w <= 2 * t:
        raise ContractViolation(f"w out of range: {w}")
    removed = cycle_edges(t)
    host = [e for e in combinations(range(v), 2) if e not in removed]
    classes = color_classes(host, 2 * t, seed)
    fs = FactorSet(v, classes, removed_subgraph=frozenset(removed))
    by_missing: dict[int, list[int]] = {}
    for i, x in enumerate(fs.missing_vertex):
        by_missing.setdefault(x, []).append(i)
    if sorted(by_missing) != list(range(t)) or any(len(ix) != 2 for ix in by_missing.values()):
        raise ConstructionFailure("near_one_factorization_minus_cycle", "unexpected missing vertices")
    order = [by_missing[x][j] for x in range(t) for j in range(2)]
    fs.factors = [fs.factors[i] for i in order]
    fs.missing_vertex = [fs.missing_vertex[i] for i in order]
    return fs.check()


def factor_pairing(f: Iterable[Edge], g: Iterable[Edge]) -> dict[Edge, Edge]:
    """Bijection sigma: f -> g with e and sigma(e) sharing a vertex.

    f and g are disjoint (near) 1-factors of equal size, so their union is a
    disjoint union of even cycles and at most one even path.  Each component is
    walked starting from its f-end, pairing every f-edge with the g-edge that
    follows it.
    """
    f = [norm_edge(*e) for e in f]
    g = [norm_edge(*e) for e in g]
    if set(f) & set(g):
        raise ContractViolation("factor_pairing: factors overlap")
    if len(f) != len(g):
        raise ContractViolation("factor_pairing: factors differ in size")
    fa = {x: e for e in f for x in e}
    ga = {x: e for e in g for x in e}
    if len(fa) != 2 * len(f) or len(ga) != 2 * len(g):
        raise ContractViolation("factor_pairing: inputs must be matchings")
    sigma: dict[Edge, Edge] = {}
    # path starts: vertices covered by f only
    starts = [x for x in fa if x not in ga]
    starts += sorted(x for x in fa if x in ga)
    for x0 in starts:
        e = fa[x0]
        if e in sigma:
            continue
        x = x0
        while e not in sigma:
            y = e[0] if e[1] == x else e[1]
            if y not in ga:
                raise ContractViolation("factor_pairing: union is not alternating")
            ge = ga[y]
            sigma[e] = ge
            x = ge[0] if ge[1] == y else ge[1]
            if x not in fa:
                break
            e = fa[x]
    if len(sigma) != len(f) or len(set(sigma.values())) != len(g):
        raise ConstructionFailure("factor_pairing", "incomplete pairing")
    return sigma
