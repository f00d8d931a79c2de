"""Closed-form drop-cost and wavelength optima for C=4, plus their lower bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor

from .model import ContractViolation


class Unsupported(ContractViolation):
    """Parameters outside the range any formula here covers."""


def _cdiv(a: int, b: int) -> int:
    return -(-a // b)


def cost_on_n4(n: int) -> int:
    """Minimum drop cost of a grooming of K_n with ratio 4."""
    if n < 2:
        raise Unsupported(f"cost_on_n4 needs n >= 2, got {n}")
    if n == 2:
        return 2
    if n == 3:
        return 3
    if n == 4:
        return 7
    return comb(n, 2)


def triangles_in_mon_n4(n: int) -> int:
    """Triangle count t(n) of a minimum-wavelength optimal grooming of K_n."""
    return (0, 0, 3, 1, 2, 2, 1, 3)[n % 8]


def mon_n4_profile(n: int) -> tuple[int, int]:
    """(wavecost, triangle count) of MON(n, 4)."""
    if n < 4:
        raise Unsupported(f"mon_n4_profile needs n >= 4, got {n}")
    if n == 4:
        return 2, 0  # kite + P3
    return _cdiv(n * (n - 1), 8), triangles_in_mon_n4(n)


def _delta_even(v: int, w: int) -> int:
    return 1 if w == 4 or (w == 2 and v % 4 == 0) else 0


def _delta_odd(v: int, w: int) -> int:
    return 1 if w == 3 and v % 4 == 3 else 0


def cost_two_period(n: int, v: int, cprime: int) -> int:
    """Minimum drop cost of an N(n, v; 4, C') for n > 4."""
    if n <= 4:
        raise Unsupported(f"cost_two_period covers n > 4, got n={n}")
    if not 0 <= v <= n:
        raise Unsupported(f"need 0 <= v <= n, got v={v}")
    w = n - v
    base = comb(n, 2)
    if cprime == 1:
        if v <= w + 1:
            return base
        return base + comb(v, 2) - (v * w) // 2
    if cprime == 2:
        if v <= 2 * w:
            return base
        if v % 2 == 0:
            return base + _cdiv(comb(v, 2), 2) - (v * w) // 2 + _delta_even(v, w)
        inner = comb(v, 2) - v * w + _cdiv(w, 2)
        return base + _cdiv(inner, 2) + _delta_odd(v, w)
    if cprime == 3:
        if w == 0:
            raise Unsupported("C'=3 with v=n reduces to a C=3 grooming; not covered")
        return base
    raise Unsupported(f"C' must be 1, 2 or 3, got {cprime}")


def neutral_edge_bound(v: int, w: int, cprime: int) -> int:
    """Upper bound on the number of neutral edges in an N(v+w, v; 4, C')."""
    if v < 0 or w < 0:
        raise Unsupported("v and w must be nonnegative")
    if cprime == 1:
        return (v * w) // 2
    if cprime == 2:
        if v % 2 == 1:
            # floor(vw - w/2)
            return v * w - _cdiv(w, 2)
        return v * w
    raise Unsupported("neutral edges are only bounded for C' in {1, 2}")


@dataclass(frozen=True)
class TriangleBound:
    l_value: Fraction
    delta_min: int
    residue: int
    slack_ceiling: int


def triangle_lower_bound_l(v: int, w: int) -> Fraction:
    if v % 2 == 0:
        return Fraction(v * (v + 3), 6) - v * w
    if v % 6 == 5:
        return Fraction(v * (v - 1), 6) - v * w + Fraction(8, 3)
    return Fraction(v * (v - 1), 6) - v * w


def round_up_to_residue(x, n: int) -> int:
    """Smallest nonnegative integer >= x congruent to 3*binom(n,2) mod 4."""
    r = (3 * comb(n, 2)) % 4
    lo = max(0, ceil(x))
    return lo + (r - lo) % 4


def triangle_lower_bound(v: int, w: int) -> TriangleBound:
    """Minimum triangle count of a cost-optimal N(v+w, v; 4, 3)."""
    if v + w < 5:
        raise Unsupported(f"need v + w >= 5, got {v + w}")
    lv = triangle_lower_bound_l(v, w)
    n = v + w
    return TriangleBound(
        l_value=lv,
        delta_min=round_up_to_residue(lv, n),
        residue=(3 * comb(n, 2)) % 4,
        slack_ceiling=max(3, ceil(lv) + 3),
    )


def wavecost_mon(n: int, v: int, cprime: int) -> int:
    """Minimum wavelength count among cost-optimal N(n, v; 4, C')."""
    if n < 5:
        raise Unsupported(f"wavecost_mon covers n >= 5, got {n}")
    if not 0 <= v <= n:
        raise Unsupported(f"need 0 <= v <= n, got v={v}")
    w = n - v
    if cprime == 1:
        if v <= w:
            return mon_n4_profile(n)[0]
        return comb(v, 2)
    if cprime == 2:
        if v <= 2 * w:
            return mon_n4_profile(n)[0]
        if v % 2 == 0:
            return _cdiv(2 * comb(v, 2) + comb(w, 2), 4)
        return ceil((2 * comb(v, 2) + Fraction((w - 1) * (w + 1), 2)) / 4)
    if cprime == 3:
        if w < 1:
            raise Unsupported("C'=3 wavecost needs w >= 1")
        return _cdiv(comb(n, 2) + triangle_lower_bound(v, w).delta_min, 4)
    raise Unsupported(f"C' must be 1, 2 or 3, got {cprime}")


def mu3(v: int) -> int:
    """Smallest w for which the C'=3 wavecost reaches ceil(n(n-1)/8)."""
    if v < 4:
        raise Unsupported(f"mu3 needs v >= 4, got {v}")
    special = {4: 1, 6: 1, 9: 1, 10: 2}
    if v in special:
        return special[v]
    t, r = divmod(v, 6)
    return {0: 1 + t, 1: t, 2: 1 + t, 3: 1 + t, 4: 2 + t, 5: 1 + t}[r]
