"""Optimal groomings with at most three V-internal edges per wavelength.

Every wavelength carries one triangle, kite or 4-cycle, so the drop cost is
binom(n, 2).  In wavelength-optimal mode the triangle count is pushed down to
its lower bound: large w is reduced to a handful of base layouts on the same
vertex set (a grooming for a larger V stays valid for a smaller one).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from ..designkit.errors import ConstructionFailure, ContractViolation
from ..designkit.headset import Headset, headset
from ..designkit.search import decompose
from ..designkit.triples import (
    TripleSystem,
    gdd3,
    pts_with_leave,
    steiner_triple_system,
)
from ..formulas import triangle_lower_bound
from ..model import (
    Block,
    Decomposition,
    Edge,
    ProblemInstance,
    Shape,
    fourcycle,
    kite,
    norm_edge,
    triangle,
)
from .common import BuildRequest, Layout, finish
from .fixtures import fixture


@dataclass
class HeadAssignment:
    """Pendant prescription for a triple system with a headset.

    ``d[i]`` lists the W-indices j whose edge {a_j, i} is hung on a triple
    headed by i.  ``chosen[(i, j)]`` pins the triple index used for that edge.
    ``f`` and ``e_c`` record the excluded index per point group and the
    W-edges reserved for kites in the two-point-group layout.
    """

    d: dict[int, tuple[int, ...]]
    chosen: dict[tuple[int, int], int] = field(default_factory=dict)
    f: tuple[int, ...] = ()
    e_c: tuple[Edge, ...] = ()

    @property
    def m(self) -> int:
        return len(self.e_c)

    @classmethod
    def uniform(cls, points, js) -> "HeadAssignment":
        return cls({i: tuple(js) for i in points})


def general_prescription(
    ts: TripleSystem,
    hs: Headset,
    assignment: HeadAssignment,
    w: int,
    v: int | None = None,
) -> Decomposition:
    """Turn selected triples into kites with pendant edges {a_j, i}.

    ``v`` is the size of V (default: the points of ``ts``); a_j is v + j.
    Unselected triples stay triangles.
    """
    v = ts.points if v is None else v
    by_head: dict[int, list[int]] = defaultdict(list)
    for k, h in enumerate(hs.heads):
        by_head[h].append(k)
    pend: dict[int, tuple[int, int]] = {}
    for (i, j), k in assignment.chosen.items():
        if hs.heads[k] != i or k in pend:
            raise ContractViolation(f"triple {k} cannot carry the edge {{a_{j}, {i}}}")
        pend[k] = (i, j)
    for i, js in assignment.d.items():
        js = sorted(set(js))
        if any(not 0 <= j < w for j in js):
            raise ContractViolation(f"D_{i} = {js} is not inside 0..{w - 1}")
        if len(js) > len(by_head[i]):
            raise ContractViolation(
                f"|D_{i}| = {len(js)} exceeds the {len(by_head[i])} headset occurrences of {i}"
            )
        free = [k for k in by_head[i] if k not in pend]
        for j in js:
            if (i, j) in assignment.chosen:
                continue
            k = free.pop(0)
            pend[k] = (i, j)
    blocks = []
    for k, t in enumerate(ts.triples):
        if k in pend:
            i, j = pend[k]
            x, y = (p for p in t if p != i)
            blocks.append(kite(x, y, i, v + j))
        else:
            blocks.append(triangle(*t))
    return Decomposition.from_blocks(ProblemInstance(v + w, v, 3), blocks)


# --- helpers ----------------------------------------------------------------


def _pendant(b: Block) -> Edge:
    deg: dict[int, int] = defaultdict(int)
    for x, y in b.edges:
        deg[x] += 1
        deg[y] += 1
    tip = next(x for x, d in deg.items() if d == 1)
    return next(e for e in b.edges if tip in e)


def _tri_part(b: Block) -> list[Edge]:
    p = _pendant(b)
    return [e for e in b.edges if e != p]


def _prescribe(lay: Layout, ts: TripleSystem, d: HeadAssignment, hs: Headset | None = None) -> None:
    hs = hs or headset(ts)
    lay.add(*general_prescription(ts, hs, d, lay.w, lay.v).blocks)


def _gdd_system(g: int, u: int) -> TripleSystem:
    gdd = gdd3(g, u)
    leave = frozenset(e for grp in gdd.groups for e in combinations(grp, 2))
    return TripleSystem(g * u, gdd.triples, leave).check()


def _complete(lay: Layout, target: int, anchors=(), local=()) -> None:
    """Cover what is left (mostly K_W) with exactly ``target`` triangles overall.

    When the bare remainder has no such cover, triangles touching W and kites
    whose pendants join a low W-vertex to an anchor are released step by step;
    ``local`` is a case-specific release set tried on its own afterwards.
    """
    wset = set(range(lay.v, lay.instance.n))
    pool = []
    stages: list[list[Block]] = [[]]
    stages.append([b for b in lay.blocks if b.shape is Shape.TRIANGLE and b.vertices & wset])
    low = {lay.a(j) for j in range(min(lay.w, 3))}
    for y in list(anchors) + list(range(min(lay.v, 3))):
        want = {norm_edge(a, y) for a in low}
        stages.append([b for b in lay.blocks if b.shape is Shape.KITE and _pendant(b) in want])
    for stage in stages:
        pool += [b for b in stage if b not in pool]
        if finish(lay, 3, target, pool, exact=True):
            return
    if local and finish(lay, 3, target, local, exact=True):
        return
    raise ConstructionFailure("c3 completion", f"no cover with {target} triangles for {lay.instance}")


def _gadget(name: str, mapping, keep=lambda b: True) -> list[Block]:
    return [b.relabel(mapping) for b in fixture(name).blocks if keep(b)]


# --- base layouts -----------------------------------------------------------


def _case_o1a(lay: Layout, target: int) -> None:
    ts = steiner_triple_system(lay.v)
    _prescribe(lay, ts, HeadAssignment.uniform(range(lay.v), range(lay.w)))
    _complete(lay, target, anchors=(0,))


def _case_o1b(lay: Layout, target: int) -> None:
    v, w, a = lay.v, lay.w, lay.a
    ts = pts_with_leave(v, "FOURCYCLE")
    d = {i: tuple(range(w - 1 if i <= 3 else w)) for i in range(v)}
    _prescribe(lay, ts, HeadAssignment(d))
    lay.add(kite(a(w - 1), 1, 2, 3), kite(a(w - 1), 3, 0, 1))
    _complete(lay, target, anchors=(4,))


def _case_o2(lay: Layout, target: int) -> None:
    v, w, a = lay.v, lay.w, lay.a
    ts = pts_with_leave(v, ("CYCLE", v))
    _prescribe(lay, ts, HeadAssignment.uniform(range(v), range(1, w)))
    # the wheel on a_0 over the odd cycle cannot be tiled by kites alone: the
    # rim edge {v-1, 0} and the spoke {a_0, v-1} are left to the completion
    for i in range((v - 1) // 2):
        lay.add(kite(a(0), 2 * i, 2 * i + 1, 2 * i + 2))
    # fallback release: the whole wheel plus the pendants hung on the last four points
    tail = set(range(v - 4, v))
    local = [
        b
        for b in lay.blocks
        if a(0) in b.vertices or (b.shape is Shape.KITE and set(_pendant(b)) & tail)
    ]
    _complete(lay, target, anchors=(v - 1,), local=local)


def _case_o3(lay: Layout, target: int, t: int) -> None:
    v, w, a = lay.v, lay.w, lay.a
    ts = _gdd_system(6, t)
    d = {6 * p + q: tuple(j for j in range(w - 1) if j != p) for p in range(t) for q in range(6)}
    lay.add(*general_prescription(ts, headset(ts), HeadAssignment(d), w, v).blocks)
    g = fixture("O3.MON(7+2,7;4,3)")
    ga0, ga1 = g.instance.v, g.instance.v + 1
    for p in range(t):
        mp = {q: 6 * p + q for q in range(6)}
        mp.update({6: v - 1, ga0: a(w - 1), ga1: a(p)})
        lay.add(*_gadget("O3.MON(7+2,7;4,3)", mp, keep=lambda b: norm_edge(ga0, ga1) not in b.edges))
    lay.add(kite(a(w - 2), 6 * (w - 2), a(w - 1), v - 1))
    for j in range(w - 2):
        lay.add(kite(6 * j, a(w - 1), a(j), a(w - 2)))
    _complete(lay, target, anchors=(0, 6))


def _swap_pendant(blocks: list[Block], old: Edge, new: Edge) -> None:
    old, new = norm_edge(*old), norm_edge(*new)
    k = next(k for k, b in enumerate(blocks) if b.shape is Shape.KITE and _pendant(b) == old)
    blocks[k] = Block(tuple(_tri_part(blocks[k])) + (new,))


def _case_o4(lay: Layout, target: int, t: int) -> None:
    v, w, a = lay.v, lay.w, lay.a
    ts = _gdd_system(6, t)
    d = {6 * p + q: tuple(j for j in range(w - 1) if j != p) for p in range(t) for q in range(6)}
    lay.add(*general_prescription(ts, headset(ts), HeadAssignment(d), w, v).blocks)
    g = fixture("O4.MON(11+2,11;4,3)")
    ga0, ga1 = 11, 12
    small = set(range(5)) | {ga0}
    q = [b for b in g.blocks if not b.vertices <= small and b != triangle(ga0, ga1, 10)]
    _swap_pendant(q, (ga1, 4), (ga1, 10))
    _swap_pendant(q, (ga0, 8), (ga0, 10))
    _swap_pendant(q, (ga1, 2), (ga0, 8))
    tail = list(range(v - 5, v))
    for p in range(t):
        mp = {i: tail[i] for i in range(5)}
        mp.update({5 + i: 6 * p + i for i in range(6)})
        mp.update({ga0: a(w - 1), ga1: a(p)})
        lay.add(*(b.relabel(mp) for b in q))
    mp = {i: tail[i] for i in range(5)}
    mp[5] = a(w - 1)
    lay.add(*_gadget("O4.MON(5+1,5;4,3)", mp))
    _complete(lay, target)


# the five kites on {0..4} + {a_0, a_1} covering everything but {a_0, a_1}
_O5_BASE = ((3, 1, "a0", 0), (3, 2, "a1", 0), ("a1", 1, 4, 2), (0, 1, 2, "a0"), (3, 0, 4, "a0"))


def _case_o5(lay: Layout, target: int, t: int) -> None:
    v, w, a = lay.v, lay.w, lay.a
    ts = _gdd_system(6, t)
    d = {6 * p + q: tuple(j for j in range(w - 2) if j != p) for p in range(t) for q in range(6)}
    lay.add(*general_prescription(ts, headset(ts), HeadAssignment(d), w, v).blocks)
    tail = list(range(v - 5, v))
    sym = {"a0": a(w - 2), "a1": a(w - 1)}
    for k in _O5_BASE:
        lay.add(kite(*(sym[x] if isinstance(x, str) else tail[x] for x in k)))
    ga0, ga1, ga2 = 11, 12, 13
    small = set(range(5)) | {ga0, ga1}
    for p in range(t):
        mp = {i: tail[i] for i in range(5)}
        mp.update({5 + i: 6 * p + i for i in range(6)})
        mp.update({ga0: a(w - 2), ga1: a(w - 1), ga2: a(p)})
        lay.add(
            *_gadget(
                "O5.MON(11+3,11;4,3)",
                mp,
                keep=lambda b: not b.vertices <= small and b != triangle(ga0, ga1, ga2),
            )
        )
    _complete(lay, target)


def _case_o6(lay: Layout, target: int, t: int) -> None:
    v, w, a = lay.v, lay.w, lay.a
    ts = _gdd_system(6, t)
    d = {6 * p + q: tuple(j for j in range(w - 2) if j != p) for p in range(t) for q in range(6)}
    lay.add(*general_prescription(ts, headset(ts), HeadAssignment(d), w, v).blocks)
    ga0, ga1, ga2 = 9, 10, 11
    small = {0, 1, 2, ga0, ga1}
    for p in range(t):
        mp = {0: v - 3, 1: v - 2, 2: v - 1}
        mp.update({3 + i: 6 * p + i for i in range(6)})
        mp.update({ga0: a(w - 2), ga1: a(w - 1), ga2: a(p)})
        lay.add(*_gadget("O6.MON(9+3,9;4,3)", mp, keep=lambda b: not b.vertices <= small))
    mp = {0: v - 3, 1: v - 2, 2: v - 1, 3: a(w - 2), 4: a(w - 1)}
    lay.add(*_gadget("O6.MON(3+2,3;4,3)", mp))
    # fallback release: the two triangles just placed and the gadget kites that
    # hold W-edges from a_0, a_1, a_2 to the two shared W-vertices
    links = {norm_edge(a(i), a(j)) for i in range(min(3, w - 2)) for j in (w - 2, w - 1)}
    local = [
        b
        for b in lay.blocks
        if (b.shape is Shape.TRIANGLE and b.vertices & {a(w - 2), a(w - 1)})
        or (b.shape is Shape.KITE and set(b.edges) & links)
    ]
    _complete(lay, target, local=local)


def _case_e1(lay: Layout, target: int) -> None:
    v, w, a = lay.v, lay.w, lay.a
    t, s = divmod(v, 6)
    ts = pts_with_leave(v, "GRAPH_L")
    _prescribe(lay, ts, HeadAssignment.uniform(range(v), range(w - 1)))
    top = a(w - 1)
    for i in range(t):
        for j in range(3):
            lay.add(fourcycle(top, 3 * i + (j + 1) % 3, 3 * i + j, 3 * t + 3 * i + j))
    if s == 4:
        lay.add(fourcycle(top, 6 * t + 2, 6 * t, 6 * t + 3))
    if s in (2, 4):
        lay.add(triangle(top, 6 * t, 6 * t + 1))
    # fallback release: the 4-cycles through a_{w-1} on the first triangle of L and the
    # a_0-pendant kites at its corners span K_5 plus three ears, enough room for a repair
    corners = {0, 1, 2}
    local = [
        b
        for b in lay.blocks
        if (b.shape is Shape.FOURCYCLE and top in b.vertices and len(b.vertices & corners) == 2)
        or (b.shape is Shape.KITE and _pendant(b) in {norm_edge(a(0), i) for i in corners})
    ] if t else []
    _complete(lay, target, anchors=(0,), local=local)


def _case_e2(lay: Layout, target: int) -> None:
    v, w, a = lay.v, lay.w, lay.a
    half = v // 2
    pairs = list(combinations(range(w), 2))
    m = next(m for m in range(min(half, len(pairs)), -1, -1) if (len(pairs) - m) % 4 == 0)
    for ec in combinations(pairs, m):
        eo = [norm_edge(a(x), a(y)) for x, y in pairs if (x, y) not in ec]
        got = decompose(eo, triangles=0, node_limit=20_000) if eo else []
        if got is not None:
            break
    else:
        raise ConstructionFailure("E2 W-split", f"no kite/4-cycle split of K_{w} leaves {m} edges")
    lay.add(*got)
    f = [x for x, _ in ec] + [0] * (half - 1 - m) + ([1] if m < half else [])
    ts = _gdd_system(2, half)
    hs = headset(ts)
    repair = v in (14, 20)
    chosen = {}
    if repair:
        ts, hs, k0 = _place_repair_triple(ts, hs, v)
        chosen[(v - 8, 1)] = k0
    d = {2 * i + r: tuple(j for j in range(w) if j != f[i]) for i in range(half) for r in (0, 1)}
    assign = HeadAssignment(d, chosen, tuple(f), tuple(norm_edge(a(x), a(y)) for x, y in ec))
    lay.add(*general_prescription(ts, hs, assign, w, v).blocks)
    for i in range(half):
        if i < m:
            x, y = ec[i]
            lay.add(kite(2 * i, 2 * i + 1, a(x), a(y)))
        else:
            lay.add(triangle(a(f[i]), 2 * i, 2 * i + 1))
    if repair:
        lay.remove(kite(v - 6, v - 4, v - 8, a(1)))
        for blk in (
            triangle(a(0), v - 8, v - 7),
            triangle(a(0), v - 6, v - 5),
            triangle(a(0), v - 4, v - 3),
            triangle(a(1), v - 2, v - 1),
        ):
            lay.remove(blk)
        lay.add(
            kite(a(0), v - 7, v - 8, v - 6),
            kite(a(0), v - 5, v - 6, v - 4),
            kite(a(0), v - 3, v - 4, v - 8),
            kite(v - 2, v - 1, a(1), v - 8),
        )
    _complete(lay, target)


def _place_repair_triple(ts: TripleSystem, hs: Headset, v: int):
    """Relabel point groups so some triple is {v-8, v-6, v-4} headed by v-8."""
    k0 = 0
    x = hs.heads[k0]
    y, z = (p for p in ts.triples[k0] if p != x)
    half = v // 2
    dest = {x // 2: (half - 4, x), y // 2: (half - 3, y), z // 2: (half - 2, z)}
    others = iter(g for g in range(half) if g not in (half - 4, half - 3, half - 2))
    mp = {}
    for g in range(half):
        ng, first = dest.get(g, (None, None))
        if ng is None:
            ng = next(others)
            first = 2 * g
        second = 2 * g + 1 if first == 2 * g else 2 * g
        mp[first], mp[second] = 2 * ng, 2 * ng + 1
    triples = tuple(tuple(mp[p] for p in t) for t in ts.triples)
    leave = frozenset(norm_edge(mp[p], mp[q]) for p, q in ts.leave)
    new_ts = TripleSystem(ts.points, triples, leave)
    heads = tuple(mp[h] for h in hs.heads)
    occ = defaultdict(int)
    for h in heads:
        occ[h] += 1
    return new_ts, Headset(heads, dict(occ)), k0


# --- dispatch ---------------------------------------------------------------


def base_parameters(v: int, w: int) -> tuple[int, int]:
    """Follow the reduction of large w down to a base layout on the same n."""
    while True:
        if v % 2 == 0:
            lim = (v + 4) // 6
            if w <= lim:
                return v, w
            v, w = (v + 1, w - 1) if w <= lim + 2 else (v + 2, w - 2)
        else:
            lim = (v + 9) // 6
            if w <= lim:
                return v, w
            v, w = (v + 1, w - 1) if w == lim + 1 else (v + 2, w - 2)


_SMALL = {
    (7, 2): "O3.MON(7+2,7;4,3)",
    (13, 3): "D.MON(13+3,13;4,3)",
    (5, 1): "O4.MON(5+1,5;4,3)",
    (11, 2): "O4.MON(11+2,11;4,3)",
    (17, 3): "D.MON(17+3,17;4,3)",
    (5, 2): "O5.MON(5+2,5;4,3)",
    (11, 3): "O5.MON(11+3,11;4,3)",
    (17, 4): "D.MON(17+4,17;4,3)",
    (3, 2): "O6.MON(3+2,3;4,3)",
    (9, 3): "O6.MON(9+3,9;4,3)",
    (15, 4): "D.MON(15+4,15;4,3)",
}


def case_name(v: int, w: int) -> str:
    """Name of the base layout used for a base pair (v, w)."""
    t, s = divmod(v, 6)
    if s in (1, 3) and w <= (v - 1) // 6:
        return "O1a"
    if s == 5 and w <= (v - 1) // 6:
        return "O1b"
    if s == 3 and w == t + 1 and v > 3:
        return "O2"
    if s == 1 and w == t + 1:
        return "O3"
    if s == 5 and w == t + 1:
        return "O4"
    if s == 5 and w == t + 2:
        return "O5"
    if s == 3 and w == t + 2:
        return "O6"
    if s % 2 == 0 and 6 * w <= v + 2:
        return "E1"
    if s == 2 and 6 * w == v + 4:
        return "E2"
    raise ContractViolation(f"({v}, {w}) is not a base pair")


@lru_cache(maxsize=None)
def _build_base(v: int, w: int) -> tuple[Block, ...]:
    n = v + w
    if (v, w) in _SMALL:
        return tuple(fixture(_SMALL[(v, w)]).blocks)
    lay = Layout(ProblemInstance(n, v, 3))
    target = triangle_lower_bound(v, w).delta_min
    name = case_name(v, w)
    t = v // 6
    if name == "O1a":
        _case_o1a(lay, target)
    elif name == "O1b":
        _case_o1b(lay, target)
    elif name == "O2":
        _case_o2(lay, target)
    elif name == "O3":
        _case_o3(lay, target, t)
    elif name == "O4":
        _case_o4(lay, target, t)
    elif name == "O5":
        _case_o5(lay, target, t)
    elif name == "O6":
        _case_o6(lay, target, t)
    elif name == "E1":
        _case_e1(lay, target)
    else:
        _case_e2(lay, target)
    return tuple(lay.blocks)


def _on_one_point(n: int) -> list[Block]:
    """Cost-optimal grooming of K_n with V = {0..n-2} and one W-vertex."""
    vv, a0 = n - 1, n - 1
    if n % 6 in (1, 3):
        return [triangle(*t) for t in steiner_triple_system(n).triples]
    if n % 6 == 5:
        ts = pts_with_leave(n, "FOURCYCLE")
        swap = {x: x for x in range(n)}
        swap[0], swap[a0] = a0, 0
        blocks = [triangle(*t) for t in ts.triples] + [fourcycle(0, 1, 2, 3)]
        return [b.relabel(swap) for b in blocks]
    ell = vv - 3 if vv % 6 == 3 else vv - 1
    ts = pts_with_leave(vv, ("CYCLE", ell))
    out = [kite(a0, 2 * i, 2 * i + 1, (2 * i + 2) % ell) for i in range(ell // 2)]
    taken: dict[int, int] = {}
    for i in range(ell, vv):
        k = next(k for k, t in enumerate(ts.triples) if i in t and k not in taken)
        taken[k] = i
    for k, t in enumerate(ts.triples):
        if k in taken:
            i = taken[k]
            x, y = (p for p in t if p != i)
            out.append(kite(x, y, i, a0))
        else:
            out.append(triangle(*t))
    return out


def build_c3(req: BuildRequest) -> Decomposition:
    inst = req.instance
    if inst.groom_cprime != 3:
        raise ContractViolation("build_c3 needs C'=3")
    if inst.n < 5:
        raise ContractViolation(f"n must be at least 5, got {inst.n}")
    if inst.w < 1:
        raise ContractViolation("C'=3 needs at least one vertex outside V")
    if not req.optimize_wavelengths:
        return Decomposition.from_blocks(inst, _on_one_point(inst.n))
    vb, wb = base_parameters(inst.v, inst.w)
    return Decomposition.from_blocks(inst, _build_base(vb, wb))
