"""Seeded backtracking decomposition of small graphs into triangles, 4-cycles and kites.

Serves as the constructive stand-in wherever a small gadget is only described
("this is easily produced"), and as the base of the MON(n, 4) recursion.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable

from ..model import Block, Edge, Shape, edge_block, fourcycle, kite, norm_edge, path, triangle
from .errors import ConstructionFailure

CYCLIC = frozenset({Shape.TRIANGLE, Shape.FOURCYCLE, Shape.KITE})


class _Budget(Exception):
    pass


def _candidates(x: int, y: int, adj: dict[int, set[int]], shapes) -> list[Block]:
    out: list[Block] = []
    ax, ay = adj[x], adj[y]
    common = ax & ay
    want_tri = Shape.TRIANGLE in shapes
    want_kite = Shape.KITE in shapes
    for z in common:
        if want_tri:
            out.append(triangle(x, y, z))
        if want_kite:
            for p in (x, y, z):
                for q in adj[p]:
                    if q not in (x, y, z):
                        out.append(kite(*[c for c in (x, y, z) if c != p], p, q))
    if want_kite:
        # e as the pendant edge: the triangle sits at x (or at y)
        for p, q in ((x, y), (y, x)):
            nb = sorted(adj[p] - {q})
            for i, b in enumerate(nb):
                for c in nb[i + 1:]:
                    if c in adj[b]:
                        out.append(kite(b, c, p, q))
    if Shape.FOURCYCLE in shapes:
        for z in ay:
            if z == x:
                continue
            for u in adj[z] & ax:
                if u != y:
                    out.append(fourcycle(x, y, z, u))
    if Shape.P3 in shapes:
        for z in ay - {x}:
            out.append(path(x, y, z))
        for z in ax - {y}:
            out.append(path(y, x, z))
    if Shape.P4 in shapes:
        for z in ax - {y}:
            for u in ay - {x, z}:
                out.append(path(z, x, y, u))
        for p, q in ((x, y), (y, x)):
            for z in adj[q] - {p}:
                for u in adj[z] - {p, q}:
                    out.append(path(p, q, z, u))
    if Shape.EDGE in shapes:
        out.append(edge_block(x, y))
    uniq = {b.edges: b for b in out}
    return list(uniq.values())


def decompose(
    edges: Iterable[Edge],
    shapes=CYCLIC,
    triangles: int | None = None,
    max_triangles: int | None = None,
    block_ok: Callable[[Block], bool] | None = None,
    max_trees: int | None = None,
    seed: int = 0,
    node_limit: int = 200_000,
    attempts: int = 30,
) -> list[Block] | None:
    """Partition ``edges`` into blocks of the given shapes, or return ``None``.

    ``triangles`` fixes the triangle count exactly; ``max_triangles`` caps it.
    ``max_trees`` caps the number of blocks that are not triangles, 4-cycles or kites.
    Each attempt is a randomized depth-first search with a node budget.
    """
    edges = sorted({norm_edge(*e) for e in edges})
    shapes = frozenset(shapes)
    if not edges:
        return [] if not triangles else None
    four_only = shapes <= CYCLIC
    if four_only and triangles is not None:
        if len(edges) < 3 * triangles or (len(edges) - 3 * triangles) % 4:
            return None
    for attempt in range(attempts):
        rng = random.Random(seed * 1_000_003 + attempt)
        adj: dict[int, set[int]] = {}
        for a, b in edges:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        chosen: list[Block] = []
        nodes = [0]
        cap = triangles if triangles is not None else max_triangles

        def rec(remaining: int, tri: int, trees: int = 0) -> bool:
            if remaining == 0:
                return triangles is None or tri == triangles
            nodes[0] += 1
            if nodes[0] > node_limit:
                raise _Budget
            if triangles is not None and four_only and remaining < 3 * (triangles - tri):
                return False
            x = min((v for v in adj if adj[v]), key=lambda v: (len(adj[v]), v))
            y = min(adj[x], key=lambda u: (len(adj[u]), u))
            cands = _candidates(x, y, adj, shapes)
            rng.shuffle(cands)
            for b in cands:
                shape = b.shape
                is_tri = shape is Shape.TRIANGLE
                if is_tri and cap is not None and tri >= cap:
                    continue
                is_tree = shape not in CYCLIC
                if is_tree and max_trees is not None and trees >= max_trees:
                    continue
                if block_ok is not None and not block_ok(b):
                    continue
                for a, c in b.edges:
                    adj[a].discard(c)
                    adj[c].discard(a)
                chosen.append(b)
                if rec(remaining - len(b.edges), tri + is_tri, trees + is_tree):
                    return True
                chosen.pop()
                for a, c in b.edges:
                    adj[a].add(c)
                    adj[c].add(a)
            return False

        try:
            if rec(len(edges), 0):
                return list(chosen)
        except _Budget:
            continue
        else:
            return None  # exhaustive: no decomposition exists
    return None


def decompose_or_fail(edges: Iterable[Edge], primitive: str, **kw) -> list[Block]:
    got = decompose(edges, **kw)
    if got is None:
        raise ConstructionFailure(primitive, "no decomposition with the requested shapes")
    return got


def exact_cover(
    edges: Iterable[Edge],
    shapes=CYCLIC,
    triangles: int | None = None,
    block_ok: Callable[[Block], bool] | None = None,
    time_limit: float = 120.0,
) -> list[Block] | None:
    """Partition ``edges`` by solving a 0/1 exact-cover program.

    Every admissible block inside the graph becomes a binary variable and
    each edge must be covered once.  Unlike :func:`decompose` this proves
    infeasibility quickly, which makes it the better tool for repair regions
    of a few hundred edges.  Returns ``None`` when no cover exists or the
    solver runs out of time.
    """
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import coo_matrix

    edges = sorted({norm_edge(*e) for e in edges})
    if not edges:
        return [] if not triangles else None
    adj: dict[int, set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    pool: dict = {}
    for x, y in edges:
        for b in _candidates(x, y, adj, frozenset(shapes)):
            if block_ok is None or block_ok(b):
                pool[b.edges] = b
    cands = list(pool.values())
    if not cands:
        return None
    row = {e: i for i, e in enumerate(edges)}
    rows, cols = [], []
    for j, b in enumerate(cands):
        for e in b.edges:
            rows.append(row[e])
            cols.append(j)
        if triangles is not None and b.shape is Shape.TRIANGLE:
            rows.append(len(edges))
            cols.append(j)
    m = len(edges) + (triangles is not None)
    mat = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(m, len(cands))).tocsr()
    rhs = np.ones(m)
    if triangles is not None:
        rhs[-1] = triangles
    res = milp(
        np.zeros(len(cands)),
        constraints=LinearConstraint(mat, rhs, rhs),
        integrality=np.ones(len(cands)),
        bounds=Bounds(0, 1),
        options={"time_limit": time_limit},
    )
    if res.x is None:
        return None
    return [b for b, val in zip(cands, res.x) if val > 0.5]
