"""Steiner and partial triple systems with prescribed leaves, and 3-GDDs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from ..model import Edge, norm_edge
from .errors import ConstructionFailure, ContractViolation

Triple = tuple[int, int, int]


def tri_edges(t: Sequence[int]) -> list[Edge]:
    a, b, c = t
    return [norm_edge(a, b), norm_edge(a, c), norm_edge(b, c)]


@dataclass(frozen=True)
class TripleSystem:
    points: int
    triples: tuple[Triple, ...]
    leave: frozenset

    def check(self) -> "TripleSystem":
        seen: set[Edge] = set()
        for t in self.triples:
            if len(set(t)) != 3 or not all(0 <= x < self.points for x in t):
                raise ConstructionFailure("TripleSystem", f"bad triple {t}")
            for e in tri_edges(t):
                if e in seen:
                    raise ConstructionFailure("TripleSystem", f"edge {e} covered twice")
                seen.add(e)
        if seen & self.leave:
            raise ConstructionFailure("TripleSystem", "a triple covers a leave edge")
        if seen | self.leave != set(combinations(range(self.points), 2)):
            raise ConstructionFailure("TripleSystem", "triples and leave do not partition K_v")
        return self

    def replication(self) -> list[int]:
        r = [0] * self.points
        for t in self.triples:
            for x in t:
                r[x] += 1
        return r


@dataclass(frozen=True)
class GroupDivisibleDesign:
    group_size: int
    group_count: int
    groups: tuple[tuple[int, ...], ...]
    triples: tuple[Triple, ...]

    def check(self) -> "GroupDivisibleDesign":
        gid = {x: i for i, g in enumerate(self.groups) for x in g}
        seen: set[Edge] = set()
        for t in self.triples:
            if len({gid[x] for x in t}) != 3:
                raise ConstructionFailure("GroupDivisibleDesign", f"triple {t} meets a group twice")
            for e in tri_edges(t):
                if e in seen:
                    raise ConstructionFailure("GroupDivisibleDesign", f"pair {e} covered twice")
                seen.add(e)
        npts = self.group_size * self.group_count
        want = {e for e in combinations(range(npts), 2) if gid[e[0]] != gid[e[1]]}
        if seen != want:
            raise ConstructionFailure("GroupDivisibleDesign", "cross-group pairs not covered")
        return self


def _canon(triples: Iterable[Sequence[int]]) -> tuple[Triple, ...]:
    return tuple(sorted(tuple(sorted(t)) for t in triples))


# --- classical Steiner triple systems --------------------------------------


def _bose(v: int) -> list[Triple]:
    m = v // 3  # odd
    half = (m + 1) // 2

    def pt(x, i):
        return x + m * (i % 3)

    out = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x, y in combinations(range(m), 2):
        z = ((x + y) * half) % m
        for i in range(3):
            out.append((pt(x, i), pt(y, i), pt(z, i + 1)))
    return out


def _skolem(v: int) -> list[Triple]:
    n = (v - 1) // 6
    m = 2 * n
    inf = v - 1

    def op(x, y):
        s = (x + y) % m
        return (s // 2) % n + (n if s % 2 else 0)

    def pt(x, i):
        return x + m * (i % 3)

    out = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(n)]
    for x, y in combinations(range(m), 2):
        for i in range(3):
            out.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    for x in range(n):
        for i in range(3):
            out.append((inf, pt(x + n, i), pt(x, i + 1)))
    return out


@lru_cache(maxsize=None)
def steiner_triple_system(v: int) -> TripleSystem:
    if v % 6 not in (1, 3) or v < 1:
        raise ContractViolation(f"an STS(v) needs v = 1, 3 (mod 6), got {v}")
    if v == 1:
        return TripleSystem(1, (), frozenset()).check()
    triples = _bose(v) if v % 6 == 3 else _skolem(v)
    return TripleSystem(v, _canon(triples), frozenset()).check()


# --- hill-climbing triangle decomposition ---------------------------------


def triangle_decompose(
    edges: Iterable[Edge], seed: int = 0, max_steps: int | None = None
) -> list[Triple] | None:
    """Partition a graph into triangles by Stinson-style hill climbing.

    Returns ``None`` when the step budget is exhausted.
    """
    edges = {norm_edge(*e) for e in edges}
    rng = random.Random(seed)
    adj: dict[int, set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if any(len(s) % 2 for s in adj.values()) or len(edges) % 3:
        return None
    free: dict[int, set[int]] = {x: set(s) for x, s in adj.items()}
    owner: dict[Edge, Triple] = {}
    target = len(edges) // 3
    count = 0
    steps = 0
    budget = max_steps or 200 * len(edges) + 10_000
    live = [x for x in free if free[x]]

    def add(t):
        for e in tri_edges(t):
            owner[e] = t
            free[e[0]].discard(e[1])
            free[e[1]].discard(e[0])

    def remove(t):
        for e in tri_edges(t):
            del owner[e]
            free[e[0]].add(e[1])
            free[e[1]].add(e[0])

    while count < target:
        steps += 1
        if steps > budget:
            return None
        if steps % 64 == 1:
            live = [x for x in free if free[x]]
        x = rng.choice(live)
        if not free[x]:
            live = [p for p in free if free[p]]
            continue
        cand = sorted(free[x])
        y, z = rng.sample(cand, 2)
        if z not in adj[y]:
            continue
        yz = norm_edge(y, z)
        if yz in owner:
            remove(owner[yz])
            count -= 1
        add(tuple(sorted((x, y, z))))
        count += 1
    return sorted(set(owner.values()))


def decompose_into_triangles(edges: Iterable[Edge], primitive: str, seed: int = 0, attempts: int = 50):
    edges = list(edges)
    for s in range(seed, seed + attempts):
        got = triangle_decompose(edges, s)
        if got is not None:
            return got
    raise ConstructionFailure(primitive, "hill climbing found no triangle decomposition")


# --- partial triple systems with a prescribed leave ------------------------


def leave_graph_l(v: int) -> list[Edge]:
    """Leave used for even v: t triangles, a matching across halves, and a tail."""
    t, s = divmod(v, 6)
    if s not in (0, 2, 4):
        raise ContractViolation(f"graph L needs even v, got {v}")
    out = []
    for i in range(t):
        out += [(3 * i, 3 * i + 1), (3 * i, 3 * i + 2), (3 * i + 1, 3 * i + 2)]
    out += [(i, 3 * t + i) for i in range(3 * t)]
    if s == 2:
        out.append((6 * t, 6 * t + 1))
    elif s == 4:
        out += [(6 * t, 6 * t + 1), (6 * t, 6 * t + 2), (6 * t, 6 * t + 3)]
    return [norm_edge(*e) for e in out]


def leave_edges(v: int, leave_shape: str | tuple) -> set[Edge]:
    if leave_shape == "FOURCYCLE":
        return {norm_edge(0, 1), norm_edge(1, 2), norm_edge(2, 3), norm_edge(3, 0)}
    if leave_shape == "GRAPH_L":
        return set(leave_graph_l(v))
    if isinstance(leave_shape, tuple) and leave_shape[0] == "CYCLE":
        ell = leave_shape[1]
        if ell == 0:
            return set()
        if ell < 3 or ell > v:
            raise ContractViolation(f"cycle length {ell} invalid for v={v}")
        return {norm_edge(i, (i + 1) % ell) for i in range(ell)}
    raise ContractViolation(f"unknown leave shape {leave_shape!r}")


@lru_cache(maxsize=None)
def pts_with_leave(v: int, leave_shape: str | tuple, seed: int = 0) -> TripleSystem:
    """Partial triple system on v points whose leave is exactly the requested labelled graph.

    Shapes: ``"FOURCYCLE"`` (0,1,2,3); ``("CYCLE", l)`` (0,...,l-1);
    ``"GRAPH_L"`` (see :func:`leave_graph_l`).
    """
    leave = leave_edges(v, leave_shape)
    host = [e for e in combinations(range(v), 2) if e not in leave]
    deg = [0] * v
    for a, b in host:
        deg[a] += 1
        deg[b] += 1
    if any(d % 2 for d in deg) or len(host) % 3:
        raise ContractViolation(f"no triple system on {v} points has leave {leave_shape}")
    if not host:
        return TripleSystem(v, (), frozenset(leave)).check()
    triples = decompose_into_triangles(host, "pts_with_leave", seed)
    return TripleSystem(v, _canon(triples), frozenset(leave)).check()


# --- group divisible designs ---------------------------------------------


def _latin_gdd(g: int) -> list[Triple]:
    """3-GDD of type g^3 from the cyclic Latin square."""
    return [(x, g + y, 2 * g + (x + y) % g) for x in range(g) for y in range(g)]


@lru_cache(maxsize=None)
def gdd3(group_size: int, group_count: int, seed: int = 0) -> GroupDivisibleDesign:
    """3-GDD of type g^u with groups of consecutive points."""
    g, u = group_size, group_count
    if u < 3:
        raise ContractViolation(f"a 3-GDD of type {g}^{u} does not exist")
    if ((u - 1) * g) % 2 or (u * (u - 1) * g * g) % 6:
        raise ContractViolation(f"a 3-GDD of type {g}^{u} does not exist")
    groups = tuple(tuple(range(g * i, g * i + g)) for i in range(u))
    if u == 3:
        triples = _latin_gdd(g)
    else:
        gid = lambda x: x // g  # noqa: E731
        host = [e for e in combinations(range(g * u), 2) if gid(e[0]) != gid(e[1])]
        triples = decompose_into_triangles(host, "gdd3", seed)
    return GroupDivisibleDesign(g, u, groups, _canon(triples)).check()
