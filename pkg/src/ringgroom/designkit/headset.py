"""Headsets of partial triple systems via an equitable 3-edge-colouring."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

from .errors import ConstructionFailure
from .triples import TripleSystem


@dataclass(frozen=True)
class Headset:
    heads: tuple[int, ...]
    occurrences: dict

    def check(self, ts: TripleSystem) -> "Headset":
        r = ts.replication()
        for t, h in zip(ts.triples, self.heads):
            if h not in t:
                raise ConstructionFailure("headset", f"head {h} not in triple {t}")
        for i in range(ts.points):
            c = self.occurrences.get(i, 0)
            if c not in (r[i] // 3, -(-r[i] // 3)):
                raise ConstructionFailure("headset", f"point {i} chosen {c} times, r={r[i]}")
        return self


def euler_split(edges: list[tuple]) -> tuple[list[int], list[int]]:
    """Split edge indices of a bipartite multigraph into two halves.

    At every vertex the two halves differ in degree by at most one: trails are
    walked from odd vertices first, then closed trails, alternating halves.
    """
    inc: dict = defaultdict(list)
    for k, (a, b) in enumerate(edges):
        inc[a].append(k)
        inc[b].append(k)
    used = [False] * len(edges)
    ptr: dict = defaultdict(int)
    side = [0] * len(edges)

    def next_edge(x):
        lst = inc[x]
        while ptr[x] < len(lst) and used[lst[ptr[x]]]:
            ptr[x] += 1
        return lst[ptr[x]] if ptr[x] < len(lst) else None

    rem = {x: len(lst) for x, lst in inc.items()}
    while True:
        odd = [x for x in inc if rem[x] % 2 == 1]
        live = odd or [x for x in inc if rem[x] > 0]
        if not live:
            break
        x, colour = min(live, key=repr), 0
        while True:
            k = next_edge(x)
            if k is None:
                break
            used[k] = True
            side[k] = colour
            colour ^= 1
            a, b = edges[k]
            rem[a] -= 1
            rem[b] -= 1
            x = b if a == x else a
    first = [k for k in range(len(edges)) if side[k] == 0]
    second = [k for k in range(len(edges)) if side[k] == 1]
    return first, second


def equitable_colouring(edges: list[tuple], k: int = 3) -> list[int]:
    """Colour the edges of a bipartite multigraph so each vertex sees every colour
    floor(d/k) or ceil(d/k) times."""
    colour = [i % k for i in range(len(edges))]
    while True:
        deg: dict = defaultdict(Counter)
        for e, c in zip(edges, colour):
            deg[e[0]][c] += 1
            deg[e[1]][c] += 1
        bad = None
        for x in sorted(deg, key=repr):
            counts = [deg[x][c] for c in range(k)]
            hi, lo = max(range(k), key=counts.__getitem__), min(range(k), key=counts.__getitem__)
            if counts[hi] - counts[lo] >= 2:
                bad = (hi, lo)
                break
        if bad is None:
            return colour
        c1, c2 = bad
        idx = [i for i, c in enumerate(colour) if c in bad]
        first, second = euler_split([edges[i] for i in idx])
        for j in first:
            colour[idx[j]] = c1
        for j in second:
            colour[idx[j]] = c2


def headset(ts: TripleSystem) -> Headset:
    """One head per triple, with point i chosen floor(r_i/3) or ceil(r_i/3) times."""
    inc = [(("p", x), ("b", k)) for k, t in enumerate(ts.triples) for x in t]
    colour = equitable_colouring(inc, 3)
    heads = [None] * len(ts.triples)
    for (p, b), c in zip(inc, colour):
        if c == 0:
            heads[b[1]] = p[1]
    occ = Counter(heads)
    return Headset(tuple(heads), dict(occ)).check(ts)
