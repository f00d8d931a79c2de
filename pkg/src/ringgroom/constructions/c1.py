"""Optimal groomings with at most one V-internal edge per wavelength."""

from __future__ import annotations

from ..designkit.errors import ContractViolation
from ..designkit.factorizations import near_one_factorization, one_factorization
from ..model import Block, Decomposition, ProblemInstance, edge_block, fourcycle, kite, triangle
from .common import BuildRequest, Layout
from .fixtures import fixture


def _class_sizes(v: int, small: tuple[int, ...]) -> list[int]:
    """Write v as 4s + t with t in ``small`` (or t = 0)."""
    for t in (0,) + small:
        if t <= v and (v - t) % 4 == 0:
            return [4] * ((v - t) // 4) + ([t] if t else [])
    raise ContractViolation(f"cannot split {v} into class sizes")


def _gadget(name: str) -> list[Block]:
    return fixture(name).blocks


def multipartite_layout(vv: int, extra: bool) -> list[Block]:
    """Cyclic grooming of K_{2vv} (or K_{2vv+1} with ``extra``) with vertex i paired to vv+i.

    Vertices 0..vv-1 play V; any two of them lie in different blocks' V-part
    at most once, so the result has one V-edge per block.
    """
    if extra:
        sizes = _class_sizes(vv, (1, 2, 3))
        gad = {s: _gadget(f"B.MON({s}+{s + 1},{s};4,1)") for s in set(sizes)}
    else:
        sizes = _class_sizes(vv, (3, 5, 6))
        gad = {s: _gadget(f"A.MON({s}+{s},{s};4,1)") for s in set(sizes)}
    blocks: list[Block] = []
    classes: list[list[int]] = []
    start = 0
    for s in sizes:
        cls = list(range(start, start + s))
        classes.append(cls)
        start += s
        lab = {i: x for i, x in enumerate(cls)}
        lab.update({s + i: vv + x for i, x in enumerate(cls)})
        if extra:
            lab[2 * s] = 2 * vv
        blocks += [b.relabel(lab) for b in gad[s]]
    owner = {x: k for k, cls in enumerate(classes) for x in cls}
    for x in range(vv):
        for y in range(x + 1, vv):
            if owner[x] != owner[y]:
                blocks.append(fourcycle(x, y, vv + x, vv + y))
    return blocks


def _v_at_most_w(lay: Layout) -> None:
    n = lay.instance.n
    lay.add(*multipartite_layout(n // 2, n % 2 == 1))


def _v_is_w_plus_one(lay: Layout) -> None:
    v, a = lay.v, lay.a
    for i in range(v - 1):
        lay.add(triangle(i, i + 1, a(i)))
    for i in range(v - 1):
        for j in range(i + 1, v - 1):
            lay.add(fourcycle(i, j + 1, a(i), a(j)))


def _v_even_large(lay: Layout) -> None:
    v, w, a = lay.v, lay.w, lay.a
    fs = one_factorization(v)
    for i in range(v - 1):
        f = fs[i]
        if i >= w:
            lay.add(*(edge_block(*e) for e in f))
            continue
        for j, (x, y) in enumerate(f, start=1):
            use = 1 <= j <= w // 2 and not (w % 2 == 0 and j == w // 2 and i >= w // 2)
            if use:
                lay.add(kite(x, y, a(i), a((i + j) % w)))
            else:
                lay.add(triangle(x, y, a(i)))


def _v_odd_large(lay: Layout) -> None:
    v, w, a = lay.v, lay.w, lay.a
    fs = near_one_factorization(v, "pairs_last")
    half = w // 2
    for h in range(half):
        lay.add(fourcycle(2 * h, 2 * h + 1, a(2 * h + 1), a(2 * h)))
    for e in fs[v - 1]:
        if e[0] >= 2 * half:
            lay.add(edge_block(*e))
    for i in range(w, v - 1):
        lay.add(*(edge_block(*e) for e in fs[i]))
    for i in range(w):
        f = list(fs[i])
        if i == 0 and w % 2 == 1:
            # the edge of F_0 through w-1 (or any edge when w = 1) comes first
            k = next(k for k, e in enumerate(f) if (w - 1) in e) if w > 1 else 0
            f.insert(0, f.pop(k))
        for j, (x, y) in enumerate(f, start=1):
            if i == 0 and j == 1 and w % 2 == 1:
                if w == 1:
                    lay.add(kite(x, y, a(0), 0))
                else:
                    other = y if x == w - 1 else x
                    lay.add(kite(a(0), other, w - 1, a(w - 1)))
                continue
            use = 1 <= j <= half and not (w % 2 == 0 and j == w // 2 and i >= w // 2)
            if use and i % 2 == 0 and i < 2 * half and j == 1:
                use = False
            if use:
                lay.add(kite(x, y, a(i), a((i + j) % w)))
            else:
                lay.add(triangle(x, y, a(i)))


def build_c1(req: BuildRequest) -> Decomposition:
    inst = req.instance
    if inst.groom_cprime != 1:
        raise ContractViolation("build_c1 needs C'=1")
    if inst.n < 5:
        raise ContractViolation(f"n must be at least 5, got {inst.n}")
    lay = Layout(inst)
    v, w = inst.v, inst.w
    if v <= w:
        _v_at_most_w(lay)
    elif v == w + 1:
        _v_is_w_plus_one(lay)
    elif w == 0:
        lay.add(*(edge_block(x, y) for x in range(v) for y in range(x + 1, v)))
    elif v % 2 == 0:
        _v_even_large(lay)
    else:
        _v_odd_large(lay)
    return lay.decomposition()
