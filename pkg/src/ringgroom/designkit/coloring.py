"""Proper k-edge-colouring of small simple graphs by Kempe-chain repair.

Used wherever a factorization is only known to exist (complements of K4
packings, K_v minus a cycle): a proper colouring with k = max degree colours
is exactly a (near-)1-factorization of the graph.
"""

from __future__ import annotations

import random
from collections import defaultdict
from typing import Iterable

from ..model import Edge, norm_edge
from .errors import ConstructionFailure


def _kempe_path(at, start: int, first: int, second: int) -> list[Edge]:
    """Edges of the maximal path from ``start`` alternating colours first/second."""
    out = []
    x, c = start, first
    seen = set()
    while True:
        e = at[x].get(c)
        if e is None or e in seen:
            return out
        seen.add(e)
        out.append(e)
        x = e[0] if e[1] == x else e[1]
        c = second if c == first else first


def edge_coloring(
    edges: Iterable[Edge], k: int, seed: int = 0, max_steps: int = 200_000
) -> dict[Edge, int] | None:
    """Try to colour ``edges`` with colours 0..k-1; ``None`` if the budget runs out."""
    rng = random.Random(seed)
    edges = [norm_edge(*e) for e in edges]
    at: dict[int, dict[int, Edge]] = defaultdict(dict)
    color: dict[Edge, int] = {}
    todo = edges[:]
    rng.shuffle(todo)

    def put(e, c):
        color[e] = c
        at[e[0]][c] = e
        at[e[1]][c] = e

    def drop(e):
        c = color.pop(e)
        del at[e[0]][c]
        del at[e[1]][c]

    steps = 0
    while todo:
        steps += 1
        if steps > max_steps:
            return None
        e = todo.pop()
        u, v = e
        free_u = [c for c in range(k) if c not in at[u]]
        free_v = [c for c in range(k) if c not in at[v]]
        if not free_u or not free_v:
            raise ConstructionFailure("edge_coloring", f"degree exceeds {k} at {e}")
        common = set(free_u) & set(free_v)
        if common:
            put(e, rng.choice(sorted(common)))
            continue
        a = rng.choice(free_u)
        b = rng.choice(free_v)
        # swap a/b along the chain leaving v through colour a
        chain = _kempe_path(at, v, a, b)
        ends_at_u = any(u in ch for ch in chain)
        if not ends_at_u and rng.random() < 0.9:
            for ch in chain:
                drop(ch)
            for i, ch in enumerate(chain):
                put(ch, b if i % 2 == 0 else a)
            put(e, a)
            continue
        # random eviction keeps the walk from cycling
        c = rng.choice([a, b])
        for x in (u, v):
            if c in at[x]:
                victim = at[x][c]
                drop(victim)
                todo.insert(rng.randrange(len(todo) + 1), victim)
        put(e, c)
    return color


def color_classes(edges: Iterable[Edge], k: int, seed: int = 0, attempts: int = 40) -> list[list[Edge]]:
    """Partition ``edges`` into k matchings, retrying with incremented seeds."""
    edges = list(edges)
    for s in range(seed, seed + attempts):
        col = edge_coloring(edges, k, s)
        if col is not None:
            classes: list[list[Edge]] = [[] for _ in range(k)]
            for e, c in col.items():
                classes[c].append(e)
            return [sorted(c) for c in classes]
    raise ConstructionFailure("edge_coloring", f"no proper {k}-edge-colouring found")
