"""Cocktail-party partitions into 4-cycles/kites and path partitions into P3s."""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from typing import Iterable

from ..model import Block, Edge, edge_block, fourcycle, kite, norm_edge, path, triangle
from .errors import ConstructionFailure, ContractViolation


def cocktail_matching(w: int) -> set[Edge]:
    return {(2 * h, 2 * h + 1) for h in range(w // 2)}


def cocktail_partition(w: int) -> list[Block]:
    """Partition K_w minus the matching {2h, 2h+1} on labels 0..w-1.

    Even w gives 4-cycles only; w = 1 (mod 4) kites and 4-cycles; w = 3 (mod 4)
    adds exactly two triangles.
    """
    if w <= 3:
        raise ContractViolation(f"cocktail_partition needs w > 3, got {w}")
    if w % 2 == 0:
        return [
            fourcycle(2 * i, 2 * j, 2 * i + 1, 2 * j + 1)
            for i, j in combinations(range(w // 2), 2)
        ]
    if w == 5:
        return [kite(2, 4, 0, 3), kite(3, 4, 1, 2)]
    if w == 7:
        return [kite(3, 6, 0, 5), kite(1, 6, 4, 3), kite(5, 6, 2, 1), triangle(0, 2, 4), triangle(1, 3, 5)]
    m = w - 4
    blocks = cocktail_partition(m)
    for h in range((m - 1) // 2):
        blocks.append(fourcycle(2 * h, m, 2 * h + 1, m + 1))
        blocks.append(fourcycle(2 * h, m + 2, 2 * h + 1, m + 3))
    lab = [m - 1, m, m + 1, m + 2, m + 3]
    blocks += [b.relabel(lab) for b in cocktail_partition(5)]
    return blocks


def p3_partition(edges: Iterable[Edge], root: int | None = None) -> list[Block]:
    """Partition a connected graph into P3s, plus one P2 (at ``root``) when the size is odd."""
    edges = sorted({norm_edge(*e) for e in edges})
    if not edges:
        return []
    adj: dict[int, list[int]] = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for x in adj:
        adj[x].sort()
    if root is None:
        root = edges[0][0]
    if root not in adj:
        raise ContractViolation(f"root {root} not in graph")
    parent = {root: None}
    order = []
    stack = [(root, iter(adj[root]))]
    order.append(root)
    while stack:
        x, it = stack[-1]
        for y in it:
            if y not in parent:
                parent[y] = x
                order.append(y)
                stack.append((y, iter(adj[y])))
                break
        else:
            stack.pop()
    if len(parent) != len(adj):
        raise ContractViolation("p3_partition needs a connected graph")
    used: set[Edge] = set()
    out: list[Block] = []
    for x in reversed(order):
        p = parent[x]
        free = [y for y in adj[x] if y != p and norm_edge(x, y) not in used]
        if len(free) % 2 and p is not None:
            free.append(p)
        for i in range(0, len(free) - 1, 2):
            a, b = free[i], free[i + 1]
            out.append(path(a, x, b))
            used |= {norm_edge(x, a), norm_edge(x, b)}
        if len(free) % 2:
            out.append(edge_block(x, free[-1]))
            used.add(norm_edge(x, free[-1]))
    if len(used) != len(edges):
        raise ConstructionFailure("p3_partition", "edges left over")
    return out


def path_pairs(vertices: list[int]) -> list[Block]:
    """Split the path vertices[0] - vertices[1] - ... into consecutive P3s (and a final P2)."""
    out = []
    k = len(vertices) - 1
    i = 0
    while i + 2 <= k:
        out.append(path(vertices[i], vertices[i + 1], vertices[i + 2]))
        i += 2
    if i < k:
        out.append(edge_block(vertices[i], vertices[i + 1]))
    return out
