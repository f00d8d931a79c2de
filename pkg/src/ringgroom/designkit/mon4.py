"""Cost-optimal groomings of K_n with ratio 4, optionally around a removed subgraph.

Small orders are solved by seeded search; larger ones grow by eight vertices
at a time: K_{m+8} = K_m + K_8 (or K_9 sharing a vertex when m is odd) + a
complete bipartite remainder split into 4-cycles.  The added pieces are
triangle-free, so the triangle count of the base carries over.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from ..model import Block, Decomposition, ProblemInstance, Shape, fourcycle, kite, norm_edge, path
from .errors import ConstructionFailure, ContractViolation
from .search import decompose

BASE_LIMIT = 15


def default_triangles(edge_count: int) -> int:
    """Fewest triangles compatible with 3*delta + 4*rest = edge_count."""
    return (3 * edge_count) % 4


@lru_cache(maxsize=None)
def _solve(n: int, hole: tuple, triangles: int, seed: int) -> tuple[Block, ...] | None:
    holes = set(hole)
    hv = max((x for e in hole for x in e), default=-1) + 1
    if n <= BASE_LIMIT or n - 8 < max(hv, 8):
        es = [e for e in combinations(range(n), 2) if e not in holes]
        got = decompose(es, triangles=triangles, seed=seed, node_limit=400_000, attempts=40)
        return None if got is None else tuple(got)
    m = n - 8
    base = _solve(m, hole, triangles, seed)
    if base is None:
        return None
    blocks = list(base)
    new = list(range(m, n))
    if m % 2 == 0:
        tail = _solve(8, (), 0, seed)
        blocks += [b.relabel(new) for b in tail]
        olds = list(range(m))
    else:
        tail = _solve(9, (), 0, seed)
        blocks += [b.relabel([m - 1] + new) for b in tail]
        olds = list(range(m - 1))
    for h in range(0, len(olds), 2):
        for k in range(0, 8, 2):
            blocks.append(fourcycle(olds[h], new[k], olds[h + 1], new[k + 1]))
    return tuple(blocks)


def partition_complete_minus(
    vertices: Sequence[int],
    hole: Iterable = (),
    triangles: int | None = None,
    seed: int = 0,
) -> list[Block]:
    """Triangles, 4-cycles and kites covering K_vertices minus ``hole`` exactly once.

    ``triangles`` defaults to the smallest count the edge total allows.
    """
    vertices = list(vertices)
    hole = {norm_edge(*e) for e in hole}
    if not all(a in vertices and b in vertices for a, b in hole):
        raise ContractViolation("hole edges must join listed vertices")
    hv = sorted({x for e in hole for x in e})
    order = hv + [x for x in vertices if x not in hv]
    pos = {x: i for i, x in enumerate(order)}
    local_hole = tuple(sorted(norm_edge(pos[a], pos[b]) for a, b in hole))
    n = len(vertices)
    edges = n * (n - 1) // 2 - len(hole)
    if triangles is None:
        triangles = default_triangles(edges)
    got = None
    for s in range(seed, seed + 3):
        got = _solve(n, local_hole, triangles, s)
        if got is not None:
            break
    if got is None:
        raise ConstructionFailure(
            "partition_complete_minus",
            f"K_{n} minus {len(hole)} edges has no partition with {triangles} triangles",
        )
    return [b.relabel(order) for b in got]


def build_mon_n4(n: int, triangle_target: int | None = None, seed: int = 0) -> Decomposition:
    """A MON(n, 4) (v = 0); ``triangle_target`` requests a different triangle count."""
    from ..formulas import triangles_in_mon_n4

    if n < 4:
        raise ContractViolation(f"build_mon_n4 needs n >= 4, got {n}")
    inst = ProblemInstance(n, 0, 4)
    if n == 4:
        if triangle_target not in (None, 0):
            raise ConstructionFailure("build_mon_n4", "K_4 is groomed by a kite and a P3 only")
        return Decomposition.from_blocks(inst, [kite(0, 1, 2, 3), path(0, 3, 1)])
    t = triangles_in_mon_n4(n) if triangle_target is None else triangle_target
    if (n * (n - 1) // 2 - 3 * t) % 4 or t < 0:
        raise ConstructionFailure("build_mon_n4", f"{t} triangles impossible for n={n}")
    blocks = partition_complete_minus(range(n), (), t, seed)
    return Decomposition.from_blocks(inst, blocks)


def place_in_shape(blocks: list[Block], want: dict[int, int], shape: Shape) -> list[Block]:
    """Relabel a decomposition of a complete graph so a block of ``shape`` hits given roles.

    ``want`` maps positions of the block's canonical vertex order (see
    :func:`block_roles`) to target labels; the other labels are permuted
    arbitrarily among themselves.
    """
    verts = sorted({x for b in blocks for x in b.vertices})
    for b in blocks:
        if b.shape is shape:
            roles = block_roles(b)
            src = [roles[i] for i in want]
            dst = [want[i] for i in want]
            mapping = dict(zip(src, dst))
            rest_src = [x for x in verts if x not in mapping]
            rest_dst = [x for x in verts if x not in dst]
            mapping.update(zip(rest_src, rest_dst))
            return [c.relabel(mapping) for c in blocks]
    raise ConstructionFailure("place_in_shape", f"no {shape.value} block to relabel")


def block_roles(b: Block) -> list[int]:
    """Vertices of a block in a role order.

    Triangle: its three vertices.  Kite (x, y, z; u): [x, y, z, u] with z the
    attachment and u the pendant tip.  4-cycle: cyclic order.
    """
    deg: dict[int, int] = {}
    for a, c in b.edges:
        deg[a] = deg.get(a, 0) + 1
        deg[c] = deg.get(c, 0) + 1
    if b.shape is Shape.KITE:
        u = next(x for x, d in deg.items() if d == 1)
        z = next(x for x, d in deg.items() if d == 3)
        x, y = sorted(x for x, d in deg.items() if d == 2)
        return [x, y, z, u]
    if b.shape is Shape.FOURCYCLE:
        start = min(deg)
        nb = {x: [c for e in b.edges for c in e if x in e and c != x] for x in deg}
        order = [start, min(nb[start])]
        while len(order) < 4:
            order.append(next(c for c in nb[order[-1]] if c != order[-2]))
        return order
    return sorted(deg)
