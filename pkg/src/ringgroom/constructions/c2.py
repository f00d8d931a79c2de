"""Optimal groomings with at most two V-internal edges per wavelength."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from ..designkit.errors import ConstructionFailure, ContractViolation
from ..designkit.factorizations import (
    factor_pairing,
    hamiltonian_tail_factorization,
    near_one_factorization,
    near_one_factorization_minus_cycle,
    one_factorization_avoiding,
)
from ..designkit.mon4 import build_mon_n4
from ..designkit.partitions import cocktail_partition, p3_partition, path_pairs
from ..designkit.search import CYCLIC, decompose
from ..formulas import cost_two_period, triangles_in_mon_n4
from ..model import (
    Block,
    Decomposition,
    ProblemInstance,
    Shape,
    edge_block,
    kite,
    norm_edge,
    path,
    triangle,
)
from .c1 import build_c1
from .common import BuildRequest, Layout, finish, merge_edge_with_triangle
from .fixtures import fixture

TREES = CYCLIC | {Shape.P3, Shape.P4, Shape.EDGE}


def _kites_from_pair(lay: Layout, f, g, i: int) -> None:
    """Triangles a_i + e for e in f, each given the pendant sigma(e) from g."""
    sigma = factor_pairing(f, g)
    for e in f:
        p, q = sigma[e]
        if p not in e:
            p, q = q, p
        other = e[0] if e[1] == p else e[1]
        lay.add(kite(other, lay.a(i), p, q))


def _components(edges) -> list[list]:
    adj: dict[int, set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen: set[int] = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        stack, comp = [s], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        seen |= comp
        out.append([e for e in edges if e[0] in comp])
    return out


def _w_part(lay: Layout) -> None:
    """A cost-optimal grooming of K_W (triangle count t(w) when w >= 5)."""
    w, a = lay.w, lay.a
    if w == 2:
        lay.add(edge_block(a(0), a(1)))
    elif w == 3:
        lay.add(triangle(a(0), a(1), a(2)))
    elif w >= 4:
        lay.add(*(b.relabel({j: a(j) for j in range(w)}) for b in build_mon_n4(w).blocks))


# ---------------------------------------------------------------- v <= 2w


@lru_cache(maxsize=None)
def _reduced_blocks(n: int) -> tuple[Block, ...]:
    return tuple(_reduced(n).blocks)


def _reduced(n: int) -> Layout:
    """All-cyclic grooming of K_n with v' = floor(2n/3) and t(n) triangles."""
    vv = (2 * n) // 3
    inst = ProblemInstance(n, vv, 2)
    lay = Layout(inst)
    w, a = inst.w, lay.a
    target = triangles_in_mon_n4(n)
    if n == 5:
        lay.add(*build_c1(BuildRequest(ProblemInstance(5, 3, 1))).blocks)
        return lay
    if n == 11:
        lay.add(*fixture("C.MON(7+4,7;4,2)").blocks)
        return lay
    if vv == 2 * w - 1:
        t = (vv - 1) // 2
        fs = near_one_factorization(vv, "offset_middle")
        for i in range(t):
            _kites_from_pair(lay, fs[i], fs[t + 1 + i], i)
        for k in range(t):
            lay.add(kite(t + k + 1, a(t), k, a(k)))
        # what is left is K_W plus the edge {t, a_t}
        if not finish(lay, 2, target):
            raise ConstructionFailure("c2_small_v", f"no finish for n={n}")
        return lay
    fs = hamiltonian_tail_factorization(vv)
    rows = 1 if vv == 2 * w else 3
    for i in range(w - rows):
        _kites_from_pair(lay, fs[i], fs[w + i], i)
    left: list[Block] = []
    conv: list[tuple[Block, Block, tuple]] = []
    for r in range(rows):
        i = w - 1 - r
        for k, (x, y) in enumerate(fs[i]):
            if k < i:
                kb = kite(x, y, a(i), a(k))
                conv.append((kb, triangle(x, y, a(i)), norm_edge(a(i), a(k))))
                lay.add(kb)
            else:
                left.append(triangle(x, y, a(i)))
                lay.add(left[-1])
    _absorb(lay, left, conv, target)
    return lay


def _pendant(b: Block):
    deg: dict[int, int] = {}
    for x, y in b.edges:
        deg[x] = deg.get(x, 0) + 1
        deg[y] = deg.get(y, 0) + 1
    tip = next(x for x, d in deg.items() if d == 1)
    return next(e for e in b.edges if tip in e)


def _swap_options(lay: Layout, tri: Block, taken: set) -> list[tuple[Block, tuple, int]]:
    """Kites whose V-pendant can move onto ``tri``: (kite, pendant, W-vertex of the kite)."""
    out = []
    for b in lay.blocks:
        if b.shape is not Shape.KITE or b in taken:
            continue
        pe = _pendant(b)
        if not all(lay.instance.in_v(x) for x in pe):
            continue
        hit = [x for x in pe if x in tri.vertices]
        if len(hit) != 1:
            continue
        ws = [x for x in b.vertices if not lay.instance.in_v(x)]
        if len(ws) == 1:
            out.append((b, pe, ws[0]))
    return out


def _absorb(lay: Layout, left: list[Block], conv: list, target: int) -> None:
    """Settle the leftover triangles so that K_W's remainder can be groomed with the right count.

    Moves: undo some triangle-to-kite conversions, or hand a kite's V-pendant to a
    leftover triangle and let the bared triangle take a W-edge instead.
    """
    base = lay.uncovered()
    plans = []
    for u in range(min(3, len(conv)) + 1):
        for c in range(len(left) + 1):
            want = target - (len(left) - c) - u
            size = len(base) + u - c
            if want >= 0 and size >= 3 * want and (size - 3 * want) % 4 == 0:
                plans.append((u + c, u, c, want))
    for _, u, c, want in sorted(plans):
        undo = conv[len(conv) - u:]
        for attempt in range(4):
            h = set(base) | {we for _, _, we in undo}
            blocks = [b for b in lay.blocks if b not in {kb for kb, _, _ in undo}]
            blocks += [tb for _, tb, _ in undo]
            taken: set = set()
            ok = True
            for tri in left[:c]:
                opts = _swap_options(Layout(lay.instance, blocks), tri, taken)
                chosen = None
                for k, (kb, pe, g) in enumerate(opts):
                    ws = sorted(e for e in h if g in e)
                    if ws and k >= attempt:
                        chosen = (kb, pe, ws[attempt % len(ws)])
                        break
                if chosen is None:
                    ok = False
                    break
                kb, pe, we = chosen
                taken.add(kb)
                h.discard(we)
                bare = Block(tuple(e for e in kb.edges if e != pe))
                blocks.remove(kb)
                blocks.remove(tri)
                blocks += [Block(bare.edges + (we,)), Block(tri.edges + (pe,))]
            if not ok:
                break
            got = decompose(h, triangles=want, seed=attempt, node_limit=40_000, attempts=4)
            if got is not None:
                lay.blocks = blocks + got
                return
            if c == 0:
                break
    raise ConstructionFailure("c2_small_v", f"could not settle leftover triangles for {lay.instance}")


# ---------------------------------------------------------------- v > 2w, v even


def _even_large(lay: Layout) -> None:
    v, w, a = lay.v, lay.w, lay.a
    if v == 2 * w + 2:
        _even_r_variant(lay)
        return
    fs = hamiltonian_tail_factorization(v)
    for i in range(w):
        _kites_from_pair(lay, fs[i], fs[w + i], i)
    rest = [e for f in fs.factors[2 * w:] for e in f]
    trees = p3_partition(rest)
    if w == 2 and v % 4 == 2:
        # the lone P2 {x, y} absorbs x's G_0 edge; {a0, a1} hangs on the bared triangle
        p2 = next(b for b in trees if b.shape is Shape.EDGE)
        trees.remove(p2)
        x, y = p2.edges[0]
        z = next(c for e in fs[w] for c in e if x in e and c != x)
        pend = norm_edge(x, z)
        k = next(b for b in lay.blocks if pend in b.edges)
        lay.remove(k)
        lay.add(Block(tuple(e for e in k.edges if e != pend) + ((a(0), a(1)),)), path(y, x, z))
        lay.add(*trees)
        return
    lay.add(*trees)
    _w_part(lay)


def _even_r_variant(lay: Layout) -> None:
    v, w, a = lay.v, lay.w, lay.a
    if v % 4 == 0:
        quads = [list(range(4 * k, 4 * k + 4)) for k in range(v // 4)]
        k33 = None
    else:
        quads = [list(range(4 * k, 4 * k + 4)) for k in range((v - 6) // 4)]
        k33 = list(range(v - 6, v))
    removed = {norm_edge(x, y) for q in quads for x, y in combinations(q, 2)}
    if k33:
        removed |= {norm_edge(x, y) for x in k33[:3] for y in k33[3:]}
    if w > 1:
        fs = one_factorization_avoiding(v, removed)
        for i in range(1, w):
            _kites_from_pair(lay, fs[2 * i - 2], fs[2 * i - 1], i)
    a0 = a(0)
    for p, q, r, s in quads:
        lay.add(kite(a0, q, p, r), kite(a0, r, s, p), path(r, q, s))
    if k33:
        p, q, r, s, t, u = k33
        lay.add(kite(a0, s, p, t), kite(a0, q, t, r), kite(a0, r, u, p))
        lay.add(edge_block(r, s), path(s, q, u))
    _w_part(lay)


# ---------------------------------------------------------------- v > 2w, v odd


def _odd_large(lay: Layout) -> None:
    v, w, a = lay.v, lay.w, lay.a
    t = (v - 1) // 2
    fs = near_one_factorization_minus_cycle(v, w)
    for i in range(w):
        _kites_from_pair(lay, fs[i], fs[w + i], i)
    g_rest = fs.factors[2 * w:]
    for h in range(0, len(g_rest), 2):
        union = g_rest[h] + g_rest[h + 1]
        for comp in _components(union):
            lay.add(*p3_partition(comp))
    if w == 3:
        a0, a1, a2 = a(0), a(1), a(2)
        lay.add(kite(a0, a1, a2, 1), path(a0, 0, 1, 2))
        tail = [a1, 0] + list(range(t - 1, 1, -1))
        lay.add(path(*tail[:4]))
        lay.add(*path_pairs(tail[3:]))
        return
    half = w // 2
    for i in range(half):
        lay.add(kite(a(2 * i), a(2 * i + 1), i, i + 1))
    walk = list(range(half, t)) + [0]
    pieces = path_pairs(walk)
    if w % 2 == 1:
        first = pieces.pop(0)
        verts = _path_order(first)
        if verts[0] != half:
            verts.reverse()
        pieces.insert(0, path(a(w - 1), *verts))
    lay.add(*pieces)
    if w > 3:
        lab = {j: a(j) for j in range(w)}
        lay.add(*(b.relabel(lab) for b in cocktail_partition(w)))


def _path_order(b: Block) -> list[int]:
    deg: dict[int, list[int]] = {}
    for x, y in b.edges:
        deg.setdefault(x, []).append(y)
        deg.setdefault(y, []).append(x)
    start = min(x for x, nb in deg.items() if len(nb) == 1)
    order = [start]
    while len(order) <= len(b.edges):
        nxt = [y for y in deg[order[-1]] if y not in order]
        order.append(nxt[0])
    return order


# ---------------------------------------------------------------- dispatch


def _small_by_search(lay: Layout) -> None:
    inst = lay.instance
    trees = cost_two_period(inst.n, inst.v, 2) - inst.n * (inst.n - 1) // 2
    for shapes in (TREES - {Shape.P4}, TREES):
        if finish(lay, 2, None, shapes=shapes, max_trees=trees):
            return
    raise ConstructionFailure("c2_search", f"no grooming found for {inst}")


def _needs_shared_wavelength(v: int, w: int) -> bool:
    """Cases where a lone V-edge must ride with a small block on W."""
    if v % 2 == 1:
        return v % 4 == 1 and w % 4 == 3 and w != 3
    return v % 4 == 2 and w >= 4 and (w * (w - 1) // 2) % 4 in (1, 2)


def build_c2(req: BuildRequest) -> Decomposition:
    inst = req.instance
    if inst.groom_cprime != 2:
        raise ContractViolation("build_c2 needs C'=2")
    if inst.n < 5:
        raise ContractViolation(f"n must be at least 5, got {inst.n}")
    n, v, w = inst.n, inst.v, inst.w
    lay = Layout(inst)
    if v <= 2 * w:
        lay.blocks = list(_reduced_blocks(n))
    elif w == 0:
        lay.add(*p3_partition(list(combinations(range(v), 2))))
    elif v % 2 == 0 and not (v == 6 and w == 2):
        _even_large(lay)
    elif v % 2 == 1 and v >= 7:
        _odd_large(lay)
    elif (v, w) == (5, 2):
        lay.add(*fixture("Ex2").blocks)
    else:
        _small_by_search(lay)
    dec = lay.decomposition()
    if req.optimize_wavelengths and v > 2 * w and _needs_shared_wavelength(v, w):
        dec = merge_edge_with_triangle(dec)
    return dec
