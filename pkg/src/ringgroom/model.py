"""Vertices, blocks, wavelengths and decompositions of K_n, plus the verifier.

Vertex ``0..v-1`` form the second-period set V, ``v..n-1`` form W.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int]

GROOM_C = 4


class Shape(str, Enum):
    EDGE = "EDGE"
    P3 = "P3"
    P4 = "P4"
    TRIANGLE = "TRIANGLE"
    FOURCYCLE = "FOURCYCLE"
    KITE = "KITE"
    OTHER = "OTHER"


CYCLIC_SHAPES = frozenset({Shape.TRIANGLE, Shape.FOURCYCLE, Shape.KITE})


class EdgeClass(str, Enum):
    NEUTRAL = "NEUTRAL"
    POSITIVE = "POSITIVE"
    CROSS = "CROSS"
    WITHIN_W = "WITHIN_W"


class ContractViolation(ValueError):
    """An operation was called outside its precondition."""


def norm_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def _shape_of(edges: Sequence[Edge]) -> Shape:
    deg: Counter[int] = Counter()
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    m, nv = len(edges), len(deg)
    degs = sorted(deg.values())
    if m == 1:
        return Shape.EDGE
    if m == 2:
        return Shape.P3 if nv == 3 else Shape.OTHER
    if m == 3:
        if nv == 3:
            return Shape.TRIANGLE
        if nv == 4 and degs == [1, 1, 2, 2]:
            return Shape.P4
        return Shape.OTHER
    if m == 4 and nv == 4:
        if degs == [2, 2, 2, 2]:
            return Shape.FOURCYCLE
        if degs == [1, 2, 2, 3]:
            return Shape.KITE
    return Shape.OTHER


@dataclass(frozen=True)
class ProblemInstance:
    n: int
    v: int
    groom_cprime: int
    groom_c: int = GROOM_C

    def __post_init__(self):
        if self.n < 1:
            raise ContractViolation(f"n must be >= 1, got {self.n}")
        if not 0 <= self.v <= self.n:
            raise ContractViolation(f"need 0 <= v <= n, got v={self.v}, n={self.n}")
        if self.groom_c != GROOM_C:
            raise ContractViolation("only grooming ratio C=4 is supported")
        if self.groom_cprime not in (1, 2, 3, 4):
            raise ContractViolation(f"C' must be in 1..4, got {self.groom_cprime}")

    @property
    def w(self) -> int:
        return self.n - self.v

    @property
    def V(self) -> range:
        return range(self.v)

    @property
    def W(self) -> range:
        return range(self.v, self.n)

    def in_v(self, x: int) -> bool:
        return 0 <= x < self.v

    def w_vertex(self, j: int) -> int:
        """Label of the W-vertex a_j."""
        return self.v + j


@dataclass(frozen=True)
class Block:
    edges: tuple[Edge, ...]

    def __post_init__(self):
        # canonical: endpoints ascending, edges sorted
        object.__setattr__(
            self, "edges", tuple(sorted(norm_edge(a, b) for a, b in self.edges))
        )

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]]) -> "Block":
        return cls(tuple((int(a), int(b)) for a, b in edges))

    @cached_property
    def shape(self) -> Shape:
        return _shape_of(self.edges)

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset(x for e in self.edges for x in e)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, edge) -> bool:
        return norm_edge(*edge) in self.edges

    def relabel(self, mapping) -> "Block":
        return Block(tuple((mapping[a], mapping[b]) for a, b in self.edges))


def triangle(x, y, z) -> Block:
    return Block(((x, y), (x, z), (y, z)))


def fourcycle(x, y, z, u) -> Block:
    return Block(((x, y), (y, z), (z, u), (u, x)))


def kite(x, y, z, u) -> Block:
    """Kite (x,y,z;u): triangle on x,y,z with pendant {z,u}."""
    return Block(((x, y), (x, z), (y, z), (z, u)))


def path(*xs) -> Block:
    return Block(tuple((xs[i], xs[i + 1]) for i in range(len(xs) - 1)))


def edge_block(x, y) -> Block:
    return Block(((x, y),))


@dataclass(frozen=True)
class Wavelength:
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks, key=lambda b: b.edges)))

    @property
    def edges(self) -> list[Edge]:
        return [e for b in self.blocks for e in b.edges]

    @property
    def vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.blocks:
            out |= b.vertices
        return frozenset(out)


@dataclass(frozen=True)
class Decomposition:
    instance: ProblemInstance
    wavelengths: tuple[Wavelength, ...]

    @classmethod
    def from_blocks(cls, instance: ProblemInstance, blocks: Iterable[Block]) -> "Decomposition":
        """One block per wavelength."""
        return cls(instance, tuple(Wavelength((b,)) for b in blocks))

    @property
    def blocks(self) -> list[Block]:
        return [b for wl in self.wavelengths for b in wl.blocks]

    @property
    def wavecost(self) -> int:
        return len(self.wavelengths)

    def canonical(self) -> "Decomposition":
        return Decomposition(
            self.instance,
            tuple(sorted(self.wavelengths, key=lambda wl: [b.edges for b in wl.blocks])),
        )

    def relabel(self, mapping, instance: ProblemInstance | None = None) -> "Decomposition":
        inst = instance or self.instance
        return Decomposition(
            inst,
            tuple(Wavelength(tuple(b.relabel(mapping) for b in wl.blocks)) for wl in self.wavelengths),
        )

    def with_instance(self, instance: ProblemInstance) -> "Decomposition":
        return Decomposition(instance, self.wavelengths)

    # --- JSON ---------------------------------------------------------------
    def to_dict(self) -> dict:
        canon = self.canonical()
        return {
            "n": self.instance.n,
            "v": self.instance.v,
            "cprime": self.instance.groom_cprime,
            "wavelengths": [
                [[list(e) for e in b.edges] for b in wl.blocks] for wl in canon.wavelengths
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "Decomposition":
        inst = ProblemInstance(int(data["n"]), int(data["v"]), int(data["cprime"]))
        wls = []
        for wl in data["wavelengths"]:
            wls.append(Wavelength(tuple(Block.from_edges(b) for b in wl)))
        return cls(inst, tuple(wls))

    @classmethod
    def from_json(cls, text: str) -> "Decomposition":
        return cls.from_dict(json.loads(text))


# --- classification and accounting ----------------------------------------


def classify_edge(instance: ProblemInstance, edge: Sequence[int], owning_block: Block) -> EdgeClass:
    e = norm_edge(*edge)
    if e not in owning_block.edges:
        raise ContractViolation(f"edge {e} is not in block {owning_block.edges}")
    a, b = e
    in_a, in_b = instance.in_v(a), instance.in_v(b)
    if in_a and in_b:
        return EdgeClass.NEUTRAL if owning_block.shape in CYCLIC_SHAPES else EdgeClass.POSITIVE
    if in_a or in_b:
        return EdgeClass.CROSS
    return EdgeClass.WITHIN_W


def drop_cost(dec: Decomposition) -> int:
    return sum(len(wl.vertices) for wl in dec.wavelengths)


def count_triangles(dec: Decomposition) -> int:
    return sum(1 for b in dec.blocks if b.shape is Shape.TRIANGLE)


def shape_census(dec: Decomposition) -> Counter:
    return Counter(b.shape for b in dec.blocks)


@dataclass(frozen=True)
class Violation:
    kind: str
    location: str


@dataclass
class VerificationReport:
    valid: bool
    violations: list[Violation]
    drop_cost: int
    wavecost: int
    triangle_count: int
    neutral_edges: int
    positive_edges: int
    cross_edges: int
    shapes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [{"kind": v.kind, "location": v.location} for v in self.violations],
            "drop_cost": self.drop_cost,
            "wavecost": self.wavecost,
            "triangle_count": self.triangle_count,
            "neutral_edges": self.neutral_edges,
            "positive_edges": self.positive_edges,
            "cross_edges": self.cross_edges,
            "shapes": self.shapes,
        }


def verify(dec: Decomposition) -> VerificationReport:
    """Check that ``dec`` is a valid N(n, v; 4, C') and tally its counters.

    Never raises on malformed content; every problem becomes a violation.
    """
    inst = dec.instance
    n, cp = inst.n, inst.groom_cprime
    violations: list[Violation] = []
    seen: Counter[Edge] = Counter()
    neutral = positive = cross = 0

    for k, wl in enumerate(dec.wavelengths):
        where = f"wavelength {k}"
        if not wl.blocks:
            violations.append(Violation("EMPTY_WAVELENGTH", where))
        wl_edges = 0
        wl_v_edges = 0
        owner: dict[int, int] = {}
        for j, blk in enumerate(wl.blocks):
            bwhere = f"{where} block {j}"
            if not blk.edges:
                violations.append(Violation("EMPTY_BLOCK", bwhere))
            if len(blk.edges) > GROOM_C:
                violations.append(Violation("BLOCK_TOO_LARGE", bwhere))
            if len(set(blk.edges)) != len(blk.edges):
                violations.append(Violation("REPEATED_EDGE_IN_BLOCK", bwhere))
            for a, b in blk.edges:
                if a == b:
                    violations.append(Violation("LOOP", f"{bwhere} edge {(a, b)}"))
                if not (0 <= a < n and 0 <= b < n):
                    violations.append(Violation("BAD_VERTEX", f"{bwhere} edge {(a, b)}"))
            for x in blk.vertices:
                if x in owner and owner[x] != j:
                    violations.append(Violation("SHARED_VERTEX", f"{where} vertex {x}"))
                owner[x] = j
            shape = blk.shape
            for e in blk.edges:
                seen[e] += 1
                a, b = e
                ina, inb = inst.in_v(a), inst.in_v(b)
                if ina and inb:
                    wl_v_edges += 1
                    if shape in CYCLIC_SHAPES:
                        neutral += 1
                    else:
                        positive += 1
                elif ina or inb:
                    cross += 1
            wl_edges += len(blk.edges)
        if wl_edges > GROOM_C:
            violations.append(Violation("CAPACITY", f"{where} carries {wl_edges} edges"))
        if wl_v_edges > cp:
            violations.append(Violation("V_CAPACITY", f"{where} carries {wl_v_edges} edges on V"))

    for e, c in sorted(seen.items()):
        if c > 1:
            violations.append(Violation("DUPLICATE_EDGE", f"edge {e} x{c}"))
    for e in combinations(range(n), 2):
        if e not in seen:
            violations.append(Violation("MISSING_EDGE", f"edge {e}"))

    census = shape_census(dec)
    return VerificationReport(
        valid=not violations,
        violations=violations,
        drop_cost=drop_cost(dec),
        wavecost=dec.wavecost,
        triangle_count=census.get(Shape.TRIANGLE, 0),
        neutral_edges=neutral,
        positive_edges=positive,
        cross_edges=cross,
        shapes={s.value: c for s, c in sorted(census.items())},
    )
