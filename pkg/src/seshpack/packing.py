"""Symplectic packing constants nu_r(L) = r * eps~^2 / L^2 and full-packing decisions.

eps~ is the Seshadri-type constant in which only (-1)-curves obstruct. For r <= 8 and
for even r it agrees with eps; for odd r >= 9 only C1..C4 matter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dynamics import alpha, sequences
from .errors import InnerBundle
from .exact import Surd
from .lattice import AmpleBundle, SymClass
from .seshadri import _bundle, curve_ratio, epsilon, is_inner, odd_c_curves

__all__ = ["PackingValue", "JmSet", "nu", "is_inner", "full_packing", "unusual_r", "q_slopes_small_r",
           "is_q_slope"]


@dataclass(frozen=True)
class PackingValue:
    value: Surd
    full: bool
    witness: Optional[SymClass] = None
    reason: str = ""

    def to_json(self) -> dict:
        if self.value.is_rational:
            v = self.value.to_fraction()
            val: dict = {"num": str(v.numerator), "den": str(v.denominator)}
        else:
            val = self.value.to_json()
        return {"value": val, "full": self.full}


@dataclass(frozen=True)
class JmSet:
    """J_m = (m - 1/2, m) U (m, m + 1/2) U {m + 2}."""

    m: int

    def __contains__(self, s) -> bool:
        s = Fraction(s)
        m = self.m
        return (m - Fraction(1, 2) < s < m + Fraction(1, 2) and s != m) or s == m + 2

    @staticmethod
    def locate(s) -> Optional[int]:
        """The unique m >= 1 with s in J_m, if any."""
        s = Fraction(s)
        if s.denominator == 1:
            m = int(s) - 2
            return m if m >= 1 else None
        if s.denominator == 2:
            return None
        m = math.floor(s + Fraction(1, 2))
        return m if m >= 1 else None


def _from_curve(r: int, L: AmpleBundle, c: SymClass) -> Fraction:
    eps = curve_ratio(c, L).to_fraction()
    return r * eps * eps / L.square()


def _odd_top(r: int) -> Surd:
    # (sqrt r - 1)^2 / 2
    return Surd(Fraction(r + 1, 2), -1, r)


def _odd_full_window(r: int, s: Fraction) -> bool:
    t = s if s >= 1 else 1 / s
    return Surd.coerce(t) <= _odd_top(r)


def nu(r: int, L) -> PackingValue:
    L = _bundle(L)
    if r % 2 and r >= 9:
        c1, c2, c3, c4 = odd_c_curves(r)
        s = L.slope
        if s <= Fraction(2, r + 1):
            c = c1
        elif Surd.coerce(s) < 1 / _odd_top(r):
            c = c2
        elif _odd_full_window(r, s):
            return PackingValue(Surd.coerce(1), True, None, "odd r, slope in [2/(sqrt r-1)^2, (sqrt r-1)^2/2]")
        elif s <= Fraction(r + 1, 2):
            c = c3
        else:
            c = c4
        val = _from_curve(r, L, c)
        return PackingValue(Surd.coerce(val), val == 1, c, "odd r, obstructed by a (-1)-curve")
    if r % 2 == 0 and r >= 10 and is_inner(r, L):
        return PackingValue(Surd.coerce(1), True, None, "even r, inner bundle")
    eps = epsilon(r, L)
    val = (r * eps.value * eps.value / L.square()).to_fraction()
    if val == 1:
        reason = "even r, slope of some xi_n (unusual r)" if r % 2 == 0 else "eps equals eta"
        if r == 8 and L.slope == 1:
            reason = "r=8, inner ray slope 1"
    else:
        reason = "obstructed by " + eps.witness.triple()
    return PackingValue(Surd.coerce(val), val == 1, eps.witness, reason)


# ---------------------------------------------------------------- q-slopes


def q_slopes_small_r(r: int, nmax: int = 40) -> dict[Fraction, int]:
    """Slopes q_{n+1}/q_n > 0 of the xi_n for r in {2,4,6,8}, mapped to their index n.

    For r in {2,4,6} the sequence is periodic and one period is listed; for r = 8 the
    indices 1..nmax are listed. Mirror copies (slope < 1) carry negative indices.
    """
    seq = sequences(r)
    period = {2: 3, 4: 4, 6: 6}.get(r)
    rng = range(-period, period) if period else range(-nmax - 1, nmax + 1)
    out: dict[Fraction, int] = {}
    for n in rng:
        sl = seq.slope(n)
        if sl is None or sl <= 0:
            continue
        if sl not in out or abs(n) < abs(out[sl]):
            out[sl] = n
    return out


def is_q_slope(r: int, s) -> Optional[int]:
    """Index n with q_{n+1,r}/q_{n,r} == s for even r, or None."""
    s = Fraction(s)
    if r % 2 or s <= 0:
        return None
    if s < 1:
        n = is_q_slope(r, 1 / s)
        return None if n is None else -1 - n
    if r <= 6:
        hit = q_slopes_small_r(r).get(s)
        return hit if hit is None or hit >= 0 else None
    if r == 8:
        # (n+1)^2/n^2, n >= 1
        if s == 1:
            return None
        root = math.isqrt(s.numerator), math.isqrt(s.denominator)
        if root[0] ** 2 == s.numerator and root[1] ** 2 == s.denominator and root[0] - root[1] == 1:
            return root[1]
        return None
    if Surd.coerce(s) <= alpha(r):
        # the slopes decrease strictly to alpha_r
        return None
    seq = sequences(r)
    n = 1
    while True:
        sl = Fraction(seq.q(n + 1), seq.q(n))
        if sl == s:
            return n
        if sl < s:
            return None
        n += 1


def unusual_r(L) -> Optional[tuple[int, int]]:
    """The unique even r (and index n) with slope(L) = q_{n+1,r}/q_{n,r}, if any."""
    L = _bundle(L)
    s = L.slope
    if s < 1:
        hit = unusual_r(L.swap())
        return None if hit is None else (hit[0], -1 - hit[1])
    if s <= Fraction(9, 2):
        for r in range(2, 2 * math.ceil(s) + 5, 2):
            n = is_q_slope(r, s)
            if n is not None:
                return (r, n)
        return None
    m = JmSet.locate(s)
    if m is None:
        return None
    r = 2 * m + 4
    n = is_q_slope(r, s)
    return None if n is None else (r, n)


# ---------------------------------------------------------------- full packings


def full_packing(r: int, L) -> tuple[bool, str]:
    """Decide nu_r(L) = 1, with the clause that fired."""
    L = _bundle(L)
    s = L.slope
    if r % 2:
        if r >= 9 and _odd_full_window(r, s):
            return True, "odd r >= 9 with slope in [2/(sqrt r-1)^2, (sqrt r-1)^2/2]"
        return False, "odd r outside the full-packing window" if r >= 9 else "odd r <= 7"
    if r >= 8 and is_inner(r, L):
        return True, "even r, inner bundle"
    n = is_q_slope(r, s)
    if n is not None:
        return True, f"even r, slope equals that of xi_{n} (unusual r)"
    return False, "even r, outer bundle off the xi_n slopes"
