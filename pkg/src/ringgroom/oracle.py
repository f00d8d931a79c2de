"""Exact branch-and-bound solver for small two-period grooming instances.

Every wavelength carries one connected block of at most four edges (merging
blocks never lowers the drop cost). A connected block on k edges spans
k + 1 - c vertices where c is 1 for a triangle, 4-cycle or kite and 0 for a
tree, so the drop cost equals binom(n, 2) plus the number of tree blocks.
The search therefore minimises tree blocks, or triangles when the number of
tree blocks is pinned.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .model import Block, ContractViolation, Decomposition, ProblemInstance, Shape, verify

BUDGET_ENV = "RINGGROOM_ORACLE_NODES"
DEFAULT_NODES = 50_000_000
MAX_N = 8
EXTENDED_MAX_N = 9
_CYCLIC = (Shape.TRIANGLE, Shape.FOURCYCLE, Shape.KITE)


@dataclass
class OracleResult:
    optimum_cost: int
    witness: Decomposition
    optimum_triangles_at_cost: int | None
    nodes_explored: int
    time_limit_hit: bool

    def to_dict(self) -> dict:
        return {
            "optimum_cost": self.optimum_cost,
            "optimum_triangles_at_cost": self.optimum_triangles_at_cost,
            "nodes_explored": self.nodes_explored,
            "time_limit_hit": self.time_limit_hit,
            "witness": self.witness.to_dict(),
        }


@dataclass
class Budget:
    nodes: int | None = None
    seconds: float | None = None
    extended: bool = False

    def node_limit(self) -> int:
        if self.nodes is not None:
            return self.nodes
        env = os.environ.get(BUDGET_ENV)
        return int(env) if env else DEFAULT_NODES


@dataclass(frozen=True)
class _Cand:
    mask: int
    vmask: int
    tree: bool
    tri: bool
    sig: tuple[int, int, int]
    block: Block


def _connected(edges) -> bool:
    verts = {x for e in edges for x in e}
    start = next(iter(verts))
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for a, b in edges:
            for p, q in ((a, b), (b, a)):
                if p == x and q not in seen:
                    seen.add(q)
                    stack.append(q)
    return seen == verts


def _candidates(inst: ProblemInstance, index: dict) -> list[_Cand]:
    all_edges = list(index)
    out = []
    v = inst.v
    for k in range(1, inst.groom_c + 1):
        for es in combinations(all_edges, k):
            nv = sum(1 for a, b in es if b < v)
            if nv > inst.groom_cprime or not _connected(es):
                continue
            blk = Block(es)
            nw = sum(1 for a, b in es if a >= v)
            verts = blk.vertices
            cyc = blk.shape in _CYCLIC
            out.append(_Cand(
                mask=sum(1 << index[e] for e in es),
                vmask=sum(1 << x for x in verts),
                tree=not cyc,
                tri=blk.shape is Shape.TRIANGLE,
                sig=(nv, k - nv - nw, nw),
                block=blk,
            ))
    return out


class _Search:
    def __init__(self, inst: ProblemInstance, budget: Budget, tree_cap: int | None):
        self.inst = inst
        n, v = inst.n, inst.v
        # V-internal edges first: they are the most constrained
        edges = sorted(combinations(range(n), 2), key=lambda e: (e[1] >= v, e[0] >= v, e))
        self.edges = edges
        index = {e: i for i, e in enumerate(edges)}
        self.full = (1 << len(edges)) - 1
        self.kind = [(a < v) + (b < v) for a, b in edges]  # 2 = V, 1 = cross, 0 = W
        self.incident = [sum(1 << index[e] for e in edges if x in e) for x in range(n)]
        self.classes = [[x for x in range(v)], [x for x in range(v, n)]]
        cands = _candidates(inst, index)
        self.tree_cap = tree_cap
        if tree_cap == 0:
            cands = [c for c in cands if not c.tree]
        order = lambda c: (c.tree, c.tri if tree_cap is not None else 0, -len(c.block), c.block.edges)
        self.by_edge: list[list[_Cand]] = [[] for _ in edges]
        for c in sorted(cands, key=order):
            low = min(i for i in range(len(edges)) if c.mask >> i & 1)
            self.by_edge[low].append(c)
        self.sigs = sorted({(c.sig, c.tree, c.tri) for c in cands})
        self.node_limit = budget.node_limit()
        self.deadline = None if budget.seconds is None else time.monotonic() + budget.seconds
        self.nodes = 0
        self.hit = False
        self.best: int | None = None
        self.best_blocks: list[Block] | None = None
        self.seen: dict = {}
        self.tree_lb = lru_cache(maxsize=None)(self._tree_lb)
        self.tri_lb = lru_cache(maxsize=None)(self._tri_lb)

    # aggregate relaxations: only the counts of V, cross and W edges matter
    def _tree_lb(self, r: tuple[int, int, int]) -> float:
        if r == (0, 0, 0):
            return 0
        best = float("inf")
        for sig, tree, _ in self.sigs:
            if all(s <= q for s, q in zip(sig, r)):
                best = min(best, tree + self.tree_lb(tuple(q - s for s, q in zip(sig, r))))
                if best == 0:
                    break
        return best

    def _tri_lb(self, r: tuple[int, int, int]) -> float:
        if r == (0, 0, 0):
            return 0
        best = float("inf")
        for sig, tree, tri in self.sigs:
            if not tree and all(s <= q for s, q in zip(sig, r)):
                best = min(best, tri + self.tri_lb(tuple(q - s for s, q in zip(sig, r))))
                if best == 0:
                    break
        return best

    def _counts(self, rem: int) -> tuple[int, int, int]:
        c = [0, 0, 0]
        m = rem
        while m:
            low = m & -m
            i = low.bit_length() - 1
            c[2 - self.kind[i]] += 1
            m ^= low
        return (c[0], c[1], c[2])

    def _fresh_prefixes(self, rem: int):
        """Per class, masks of the first k untouched vertices (interchangeable)."""
        out = []
        for cls in self.classes:
            acc, pre = 0, [0]
            for x in cls:
                if rem & self.incident[x] == self.incident[x]:
                    acc |= 1 << x
                    pre.append(acc)
            out.append(pre)
        return out

    def _out_of_budget(self) -> bool:
        if self.nodes >= self.node_limit:
            return True
        if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            return True
        return False

    def run(self, triangles: bool) -> None:
        self.triangles = triangles
        self.stack: list[Block] = []
        self._dfs(self.full, 0)

    def _dfs(self, rem: int, score: int) -> None:
        if self.hit:
            return
        self.nodes += 1
        if self._out_of_budget():
            self.hit = True
            return
        if rem == 0:
            if self.best is None or score < self.best:
                self.best = score
                self.best_blocks = list(self.stack)
            return
        lb = (self.tri_lb if self.triangles else self.tree_lb)(self._counts(rem))
        if self.best is not None and score + lb >= self.best:
            return
        if lb == float("inf"):
            return
        prev = self.seen.get(rem)
        if prev is not None and prev <= score:
            return
        self.seen[rem] = score
        low = (rem & -rem).bit_length() - 1
        prefixes = self._fresh_prefixes(rem)
        fresh_all = [p[-1] for p in prefixes]
        for c in self.by_edge[low]:
            if c.mask & rem != c.mask:
                continue
            ok = True
            for pre, every in zip(prefixes, fresh_all):
                f = c.vmask & every
                if f and f != pre[bin(f).count("1")]:
                    ok = False
                    break
            if not ok:
                continue
            gain = c.tri if self.triangles else c.tree
            self.stack.append(c.block)
            self._dfs(rem & ~c.mask, score + gain)
            self.stack.pop()
            if self.hit:
                return


def _check_size(inst: ProblemInstance, budget: Budget) -> None:
    cap = EXTENDED_MAX_N if budget.extended else MAX_N
    if inst.n > cap:
        raise ContractViolation(f"oracle supports n <= {cap}, got {inst.n}")


def _result(inst, search: _Search, cost_of, tri) -> OracleResult:
    if search.best_blocks is None:
        raise ContractViolation(f"no decomposition found for {inst} within the budget")
    dec = Decomposition.from_blocks(inst, search.best_blocks)
    report = verify(dec)
    assert report.valid, report.violations
    return OracleResult(
        optimum_cost=report.drop_cost,
        witness=dec,
        optimum_triangles_at_cost=tri(report),
        nodes_explored=search.nodes,
        time_limit_hit=search.hit,
    )


def solve_min_cost(instance: ProblemInstance, budget: Budget | None = None) -> OracleResult:
    """Minimum drop cost of ``instance`` with an optimal witness."""
    budget = budget or Budget()
    _check_size(instance, budget)
    s = _Search(instance, budget, tree_cap=None)
    s.run(triangles=False)
    return _result(instance, s, None, lambda r: None)


def solve_min_triangles(
    instance: ProblemInstance, fixed_cost: int | None = None, budget: Budget | None = None
) -> OracleResult:
    """Fewest triangles over decompositions of drop cost exactly ``fixed_cost``.

    ``fixed_cost`` defaults to binom(n, 2), the optimum whenever C' = 3 and w >= 1.
    """
    budget = budget or Budget()
    _check_size(instance, budget)
    base = comb(instance.n, 2)
    fixed_cost = base if fixed_cost is None else fixed_cost
    if fixed_cost != base:
        raise ContractViolation("triangle minimisation is supported at cost binom(n, 2) only")
    s = _Search(instance, budget, tree_cap=0)
    s.run(triangles=True)
    return _result(instance, s, None, lambda r: r.triangle_count)
