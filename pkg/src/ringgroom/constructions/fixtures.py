"""Small reference decompositions shipped as data and re-verified on load."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations

from ..model import (
    Block,
    ContractViolation,
    Decomposition,
    ProblemInstance,
    count_triangles,
    drop_cost,
    edge_block,
    fourcycle,
    kite,
    norm_edge,
    path,
    triangle,
)

_TOKEN = re.compile(r"^\s*(a)?\s*(\d+)\s*(?:\+\s*i)?\s*$")


@dataclass(frozen=True)
class FixtureInfo:
    name: str
    n: int
    v: int
    cprime: int
    cost: int
    triangles: int
    wavecost: int
    notes: tuple[str, ...] = ()


def _vertex(tok: str, v: int, i: int | None, modulus: int | None) -> int:
    tok = tok.strip()
    if tok.startswith("a"):
        return v + int(tok[1:])
    if "+" in tok:
        base, var = (s.strip() for s in tok.split("+"))
        if var != "i" or i is None:
            raise ContractViolation(f"bad vertex token {tok!r}")
        x = int(base) + i
        return x % modulus if modulus else x
    return int(tok)


def parse_block(text: str, v: int, i: int | None = None, modulus: int | None = None) -> Block:
    """Parse ``(x,y,z)``, ``(x,y,z,u)``, ``(x,y,z;u)``, ``[x,...]`` or ``{x,y}``; ``a<j>`` is v+j."""
    s = text.strip()
    opener, closer = s[0], s[-1]
    body = s[1:-1]
    if opener == "(" and closer == ")":
        if ";" in body:
            head, tail = body.split(";")
            xs = [t for t in head.split(",") if t.strip()]
            if len(xs) != 3:
                raise ContractViolation(f"kite needs three vertices before ';': {text!r}")
            x, y, z = (_vertex(t, v, i, modulus) for t in xs)
            return kite(x, y, z, _vertex(tail, v, i, modulus))
        xs = [_vertex(t, v, i, modulus) for t in body.split(",") if t.strip()]
        if len(xs) == 3:
            return triangle(*xs)
        if len(xs) == 4:
            return fourcycle(*xs)
    elif opener == "[" and closer == "]":
        return path(*(_vertex(t, v, i, modulus) for t in body.split(",")))
    elif opener == "{" and closer == "}":
        a, b = (_vertex(t, v, i, modulus) for t in body.split(","))
        return edge_block(a, b)
    raise ContractViolation(f"cannot parse block {text!r}")


@lru_cache(maxsize=None)
def _raw() -> dict:
    text = resources.files(__package__).joinpath("data/fixtures.json").read_text()
    return json.loads(text)


def fixture_names() -> list[str]:
    return list(_raw())


def _find_embedding(sub: Decomposition, leftover: set, instance: ProblemInstance) -> dict | None:
    """Map ``sub`` onto the graph ``leftover``, sending V to V and W to W."""
    verts = sorted({x for e in leftover for x in e})
    sv = [x for x in range(sub.instance.n) if x < sub.instance.v]
    sw = [x for x in range(sub.instance.v, sub.instance.n)]
    tv = [x for x in verts if instance.in_v(x)]
    tw = [x for x in verts if not instance.in_v(x)]
    if len(sv) != len(tv) or len(sw) != len(tw):
        return None
    sub_edges = [e for b in sub.blocks for e in b.edges]
    for pv in permutations(tv):
        for pw in permutations(tw):
            m = dict(zip(sv, pv)) | dict(zip(sw, pw))
            if {norm_edge(m[a], m[b]) for a, b in sub_edges} == leftover:
                return m
    return None


@lru_cache(maxsize=None)
def _load(name: str) -> tuple[Decomposition, FixtureInfo]:
    raw = _raw()
    if name not in raw:
        raise ContractViolation(f"unknown fixture {name!r}")
    d = raw[name]
    n, v, cp = d["n"], d["v"], d["cprime"]
    inst = ProblemInstance(n, v, cp)
    mod = d.get("modulus")
    notes: list[str] = []
    blocks: list[Block] = []
    for fam in d.get("families", []):
        for i in fam["i"]:
            blocks.append(parse_block(fam["block"], v, i, mod))
    for b in d.get("blocks", []):
        blocks.append(parse_block(b, v))
    uniq: list[Block] = []
    for b in blocks:
        if b in uniq:
            notes.append(f"block list repeats {sorted(b.edges)}; kept once")
        else:
            uniq.append(b)
    blocks = uniq
    if "complete_with" in d:
        sub, _ = _load(d["complete_with"]["fixture"])
        used = {e for b in blocks for e in b.edges}
        leftover = set(combinations(range(n), 2)) - used
        m = _find_embedding(sub, leftover, inst)
        if m is None:
            raise ContractViolation(f"{name}: the leftover edges do not host {d['complete_with']['fixture']}")
        blocks += [b.relabel(m) for b in sub.blocks]
        notes.append(f"completed with {d['complete_with']['fixture']} on {sorted(m.values())}")
    dec = Decomposition.from_blocks(inst, blocks)
    exp = d["expected"]
    info = FixtureInfo(name, n, v, cp, exp["cost"], exp["triangles"], exp["wavecost"], tuple(notes))
    return dec, info


def fixture(name: str) -> Decomposition:
    """The named reference decomposition, canonicalized."""
    return _load(name)[0].canonical()


def fixture_info(name: str) -> FixtureInfo:
    return _load(name)[1]


def fixture_profile(dec: Decomposition) -> tuple[int, int, int]:
    return drop_cost(dec), count_triangles(dec), dec.wavecost
