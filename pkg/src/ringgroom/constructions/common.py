"""Shared plumbing for the builders: block collection, finishing search, packing."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from ..designkit.errors import ConstructionFailure
from ..designkit.search import CYCLIC, decompose, exact_cover
from ..model import (
    Block,
    Decomposition,
    Edge,
    ProblemInstance,
    Shape,
    Wavelength,
)


@dataclass
class BuildRequest:
    instance: ProblemInstance
    optimize_wavelengths: bool = False
    seed: int = 0


@dataclass
class Layout:
    """Blocks being assembled for one instance; ``a(j)`` is the label of W-vertex j."""

    instance: ProblemInstance
    blocks: list[Block] = field(default_factory=list)

    @property
    def v(self) -> int:
        return self.instance.v

    @property
    def w(self) -> int:
        return self.instance.w

    def a(self, j: int) -> int:
        return self.instance.v + j

    def add(self, *blocks: Block) -> None:
        self.blocks.extend(blocks)

    def covered(self) -> set[Edge]:
        return {e for b in self.blocks for e in b.edges}

    def uncovered(self) -> set[Edge]:
        return set(combinations(range(self.instance.n), 2)) - self.covered()

    def v_edges(self, b: Block) -> int:
        return sum(1 for x, y in b.edges if x < self.v and y < self.v)

    def triangles(self) -> int:
        return sum(1 for b in self.blocks if b.shape is Shape.TRIANGLE)

    def remove(self, b: Block) -> None:
        self.blocks.remove(b)

    def find(self, pred) -> Block:
        for b in self.blocks:
            if pred(b):
                return b
        raise ConstructionFailure("layout", "expected block not found")

    def decomposition(self) -> Decomposition:
        return Decomposition.from_blocks(self.instance, self.blocks)


def cap_ok(instance: ProblemInstance, cprime: int):
    v = instance.v

    def ok(b: Block) -> bool:
        return sum(1 for x, y in b.edges if x < v and y < v) <= cprime

    return ok


def finish(
    lay: Layout,
    cprime: int,
    triangles: int | None,
    release: Iterable[Block] = (),
    seed: int = 0,
    shapes=CYCLIC,
    max_trees: int | None = None,
    primitive: str = "finish",
    exact: bool = False,
) -> bool:
    """Cover every uncovered edge (plus the edges of ``release``) by search.

    ``triangles`` is the total triangle count wanted for the whole layout.
    Returns False, leaving the layout untouched, when no cover is found.
    With ``exact`` a short randomized search is followed by the exact-cover program.
    """
    release = [b for b in release if b in lay.blocks]
    kept = [b for b in lay.blocks if b not in release]
    rest = set(combinations(range(lay.instance.n), 2)) - {e for b in kept for e in b.edges}
    have = sum(1 for b in kept if b.shape is Shape.TRIANGLE)
    want = None if triangles is None else triangles - have
    if want is not None and want < 0:
        return False
    got = decompose(
        rest,
        shapes=shapes,
        triangles=want,
        block_ok=cap_ok(lay.instance, cprime),
        max_trees=max_trees,
        seed=seed,
        node_limit=20_000 if exact else 60_000,
        attempts=2 if exact else 8,
    )
    if got is None and exact:
        got = exact_cover(rest, shapes, want, cap_ok(lay.instance, cprime))
    if got is None:
        return False
    lay.blocks = kept + got
    return True


def finish_progressive(
    lay: Layout,
    cprime: int,
    triangles: int | None,
    stages: Iterable[Iterable[Block]],
    seed: int = 0,
    primitive: str = "finish",
    **kw,
) -> None:
    """Try :func:`finish` releasing ever larger block sets; raise if all stages fail."""
    pool: list[Block] = []
    for stage in stages:
        pool += [b for b in stage if b not in pool]
        if finish(lay, cprime, triangles, pool, seed=seed, **kw):
            return
    raise ConstructionFailure(primitive, f"finishing search failed for {lay.instance}")


def merge_edge_with_triangle(dec: Decomposition) -> Decomposition:
    """Share one wavelength between a lone V-internal edge and a small block on W.

    A triangle on W is preferred; a P3 or lone edge on W is used otherwise.
    """
    inst = dec.instance
    blocks = dec.blocks
    lone = [b for b in blocks if b.shape is Shape.EDGE and all(inst.in_v(x) for x in b.vertices)]
    small = [
        b
        for b in blocks
        if len(b.edges) <= 3 and b not in lone and not any(inst.in_v(x) for x in b.vertices)
    ]
    small.sort(key=lambda b: (b.shape is not Shape.TRIANGLE, -len(b.edges)))
    if not lone or not small:
        raise ConstructionFailure("merge", "no lone V-edge and small W-block to share a wavelength")
    p2, other = lone[0], small[0]
    rest = [Wavelength((b,)) for b in blocks if b not in (p2, other)]
    return Decomposition(inst, tuple(rest) + (Wavelength((p2, other)),)).canonical()
