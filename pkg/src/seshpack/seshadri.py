"""Seshadri constants eps_r(L) of L = O(e1, e2) at r very general points of P1 x P1.

Exact values come from curve intersections: eps = (C.L)/(C.E) for the curve C that
computes it. On the inner region only bounds are known in general, and the result is
a :class:`SeshadriValue` of kind ``"bounded"`` unless the ray of L_eta is certified nef.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .dynamics import curve_c, curve_c_r8, phi_r, sequences, DEFAULT_PRECISION
from .errors import EvenR, InnerBundle, OddR
from .exact import Surd
from .lattice import AmpleBundle, SymClass, e_class


@dataclass(frozen=True)
class SeshadriValue:
    kind: str  # "exact" or "bounded"
    value: Optional[Surd] = None
    lower: Optional[Surd] = None
    upper: Optional[Surd] = None
    witness: Optional[SymClass] = None
    note: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.is_exact:
            out["value"] = self.value.to_json()
        else:
            out["lower"] = self.lower.to_json()
            out["upper"] = self.upper.to_json()
        out["witness"] = self.witness.to_json() if self.witness is not None else None
        out["note"] = self.note
        return out


def _bundle(L) -> AmpleBundle:
    if isinstance(L, AmpleBundle):
        return L
    return AmpleBundle(*L)


def curve_ratio(c: SymClass, L: AmpleBundle) -> Surd:
    """(C . pi^*L) / (C . E)."""
    return c.dot(L.pullback(c.r)) / c.dot(e_class(c.r))


def eta(r: int, L) -> Surd:
    """sqrt(L^2 / r) = sqrt(2 e1 e2 / r)."""
    L = _bundle(L)
    return Surd.sqrt(L.square() / r)


def is_inner(r: int, L) -> bool:
    """Slope in [beta_r, alpha_r], i.e. r e1 e2 >= 2 (e1 + e2)^2."""
    L = _bundle(L)
    return r * L.e1 * L.e2 >= 2 * (L.e1 + L.e2) ** 2


def s_of_r(r: int) -> Surd:
    """(2r + 1 - sqrt(12r + 1)) / 4 for odd r >= 9."""
    if r % 2 == 0:
        raise EvenR(f"s(r) is defined for odd r (got {r})")
    if r < 9:
        raise ValueError("s(r) needs r >= 9")
    val = Surd(Fraction(2 * r + 1, 4), Fraction(-1, 4), 12 * r + 1)
    if r <= 99:
        _check_s_bounds(r, val)
    return val


@lru_cache(maxsize=64)
def _check_s_bounds(r: int, val: Surd) -> None:
    # (sqrt r - 1)^2/2 < s(r) < alpha_r; three radicands, so decided on intervals
    from mpmath import iv

    s = val.to_mpf(iv)
    top = (iv.sqrt(r) - 1) ** 2 / 2
    alpha = ((r - 4) + iv.sqrt(r * (r - 8))) / 4
    if not top.b < s.a or (r >= 11 and not s.b < alpha.a):
        raise ArithmeticError(f"s({r}) bounds not certified")


def odd_gap_top(r: int) -> Surd:
    """Upper end of the odd-r slope range where eps is not given by C1..C4: min(s(r), alpha_r).

    For r >= 11 this is s(r). At r = 9, alpha_9 = 2 < s(9), and slopes in [2, s(9)) are
    outer, so the gap is [1/2, 2] = [beta_9, alpha_9].
    """
    if r == 9:
        return Surd.coerce(2)
    return s_of_r(r)


def odd_c_curves(r: int) -> tuple[SymClass, SymClass, SymClass, SymClass]:
    """The four (-1)-curve classes C1..C4 governing odd r >= 9."""
    h = (r - 1) // 2
    return (SymClass(r, r, 0, -1), SymClass(r, h, 1, -1), SymClass(r, 1, h, -1), SymClass(r, 0, r, -1))


# ---------------------------------------------------------------- r <= 7 tables

_F = Fraction

# (upper breakpoint of the slope interval, curve computing eps there); ties go left
SMALL_R_TABLES: dict[int, list[tuple[Optional[Fraction], tuple[int, int, int]]]] = {
    1: [(_F(1), (1, 0, -1)), (None, (0, 1, -1))],
    2: [(_F(1), (2, 0, -1)), (None, (0, 2, -1))],
    3: [(_F(1, 2), (3, 0, -1)), (_F(2), (1, 1, -1)), (None, (0, 3, -1))],
    4: [(_F(1, 2), (4, 0, -1)), (_F(2), (4, 4, -3)), (None, (0, 4, -1))],
    5: [(_F(1, 3), (5, 0, -1)), (_F(1), (2, 1, -1)), (_F(3), (1, 2, -1)), (None, (0, 5, -1))],
    6: [(_F(1, 3), (6, 0, -1)), (_F(3, 4), (12, 6, -5)), (_F(4, 3), (12, 12, -7)),
        (_F(3), (6, 12, -5)), (None, (0, 6, -1))],
    7: [(_F(1, 4), (7, 0, -1)), (_F(13, 17), (3, 1, -1)), (_F(17, 13), (28, 28, -15)),
        (_F(4), (1, 3, -1)), (None, (0, 7, -1))],
}


def small_r_branch(r: int, L: AmpleBundle) -> SymClass:
    s = L.slope
    for bp, cls in SMALL_R_TABLES[r]:
        if bp is None or s <= bp:
            return SymClass(r, *cls)
    raise AssertionError("unreachable")


# ---------------------------------------------------------------- r = 8


def find_n_r8(L: AmpleBundle) -> int:
    """n with (n+1)^2/n^2 <= slope <= n^2/(n-1)^2; negative (mirrored) for slope < 1."""
    s = L.slope
    if s == 1:
        raise InnerBundle("slope 1 is the inner ray for r = 8")
    if s < 1:
        return -find_n_r8(L.swap())
    root = Surd.sqrt(s)
    n = max(1, ((root + 1) / (s - 1)).ceil())
    while n > 1 and Fraction(n, n - 1) ** 2 < s:
        n -= 1
    while Fraction(n + 1, n) ** 2 > s:
        n += 1
    return n


def epsilon_r8_closed(n: int, L: AmpleBundle) -> Fraction:
    """n((n+1)e1 + (n-1)e2) / (2(2n^2 - 1)), the value C_n.L / C_n.E for n >= 1."""
    return Fraction(n * ((n + 1) * L.e1 + (n - 1) * L.e2), 2 * (2 * n * n - 1))


# ---------------------------------------------------------------- even r >= 10


def find_n_even(r: int, L) -> int:
    """Index n with slope(xi_n) <= e2/e1 <= slope(xi_{n-1}); integer arithmetic only."""
    L = _bundle(L)
    if r % 2:
        raise OddR(f"r={r} is odd")
    if r < 10:
        raise ValueError("find_n_even needs r >= 10")
    if is_inner(r, L):
        raise InnerBundle(f"slope {L.slope} lies in [beta_{r}, alpha_{r}]")
    if L.e1 > L.e2:
        return -find_n_even(r, L.swap())
    seq = sequences(r)
    n = 1
    while L.e2 * seq.q(n) - L.e1 * seq.q(n + 1) < 0:
        n += 1
    return n


def find_n_phi(r: int, L, prec: int = DEFAULT_PRECISION) -> int:
    """floor(phi_r(v_L) + 1/2) with v_L = (e1, e2, -eta); the floating-point method."""
    L = _bundle(L)
    v = SymClass(r, L.e1, L.e2, -eta(r, L))
    val = phi_r(r, v, prec)
    n = val.floor_half()
    if n is None:
        raise ArithmeticError("phi enclosure straddles an integer; raise the precision")
    return n


def epsilon_even_outer(r: int, L: AmpleBundle) -> tuple[Fraction, int]:
    n = find_n_even(r, L)
    seq = sequences(r)
    val = (L.e1 * seq.p(n) + L.e2 * seq.p(n - 1)) / (r * seq.m(n))
    return Fraction(val), n


# ---------------------------------------------------------------- inner region


def dtg_lower(r: int, L: AmpleBundle) -> Surd:
    """eta * sqrt(1 - 1/(5r)) for odd r, eta * sqrt(1 - 2/(9r)) for even r."""
    factor = Fraction(5 * r - 1, 5 * r) if r % 2 else Fraction(9 * r - 2, 9 * r)
    return Surd.sqrt(L.square() / r * factor)


def _in_dtg_interval_odd(r: int, L: AmpleBundle) -> bool:
    # slopes in [2/(sqrt r - 1)^2, (sqrt r - 1)^2 / 2]
    top = Surd(Fraction(r + 1, 2), -1, r)
    s = L.slope
    t = s if s >= 1 else 1 / s
    return Surd.coerce(t) <= top


def _odd_gap_lower(r: int, L: AmpleBundle) -> Surd:
    # eps is nondecreasing in e1 and e2; drop to the slope-s(r) bundle below L, where
    # the C3 formula is exact
    if L.slope < 1:
        return _odd_gap_lower(r, L.swap())
    s = s_of_r(r)
    return (L.e2 * (r - 1) / s + 2 * L.e2) / (2 * r)


def hull_lower(r: int, L: AmpleBundle, certificates) -> Optional[Fraction]:
    """Convexity bound from the two certified nef rays whose slopes bracket L."""
    below = above = None
    s = L.slope
    for cert in certificates:
        c = cert.cls
        if not c.is_rational or c.d1 == 0:
            continue
        d1, d2, e = (x.to_fraction() for x in c.coords)
        t = d2 / d1
        if t <= s and (below is None or t > below[0]):
            below = (t, d1, d2, -e)
        if t >= s and (above is None or t < above[0]):
            above = (t, d1, d2, -e)
    if below is None or above is None:
        return None
    if below[0] == above[0]:
        return L.e1 / below[1] * below[3]
    # L = lam * (d1, d2) + mu * (d1', d2')
    _, a1, a2, am = below
    _, b1, b2, bm = above
    det = a1 * b2 - a2 * b1
    lam = (L.e1 * b2 - L.e2 * b1) / det
    mu = (a1 * L.e2 - a2 * L.e1) / det
    return lam * am + mu * bm


@lru_cache(maxsize=512)
def _certified_slopes(r: int, window: int) -> tuple:
    from .nefgen import certified_classes

    out = []
    for cert in certified_classes(r, window=window):
        c = cert.cls
        if c.is_rational and c.d1 != 0 and c.d2 != 0:
            out.append((c.d2.to_fraction() / c.d1.to_fraction(), cert))
    return tuple(out)


def _inner(r: int, L: AmpleBundle, use_hull: bool, window: int) -> SeshadriValue:
    upper = eta(r, L)
    from .nefgen import find_certificate

    cert = find_certificate(r, L.slope, window)
    if cert is not None:
        return SeshadriValue("exact", value=upper, witness=cert.cls,
                             note=f"inner; L_eta lies on a certified square-zero nef ray ({cert.provenance})")
    if r % 2 == 0:
        lower = dtg_lower(r, L)
        note = "inner; lower bound eta*sqrt(1-2/(9r)) on the closed inner interval, upper bound eta"
    elif _in_dtg_interval_odd(r, L):
        lower = dtg_lower(r, L)
        note = ("inner; lower bound eta*sqrt(1-1/(5r)) on the closed interval "
                "[2/(sqrt r-1)^2, (sqrt r-1)^2/2], upper bound eta")
    else:
        lower = _odd_gap_lower(r, L)
        note = ("inner; slope between (sqrt r-1)^2/2 and s(r) (or mirrored): lower bound from "
                "monotonicity against the slope-s(r) bundle, upper bound eta")
    if use_hull:
        h = hull_lower(r, L, [c for _, c in _certified_slopes(r, window)])
        if h is not None and lower < h:
            lower = Surd.coerce(h)
            note += "; lower bound improved by convexity between certified nef rays"
    return SeshadriValue("bounded", lower=lower, upper=upper, note=note)


# ---------------------------------------------------------------- dispatcher


def epsilon(r: int, L, use_hull: bool = False, window: int = 5) -> SeshadriValue:
    """The r-point Seshadri constant of O(e1, e2)."""
    L = _bundle(L)
    if r < 1:
        raise ValueError("r must be positive")
    if r <= 7:
        c = small_r_branch(r, L)
        return SeshadriValue("exact", value=curve_ratio(c, L), witness=c,
                             note=f"r={r}: every ample bundle is outer; piecewise curve table")
    if r == 8:
        if L.slope == 1:
            return SeshadriValue("exact", value=Surd.coerce(L.e1 / 2), witness=SymClass(8, 2, 2, -1),
                                 note="r=8, slope 1: -K_X is nef and square-zero, eps = eta = e1/2")
        n = find_n_r8(L)
        c = curve_c_r8(n)
        return SeshadriValue("exact", value=curve_ratio(c, L), witness=c,
                             note=f"r=8: computed by C_{n} = T_8^{n}(E)")
    if r % 2 == 0:
        if is_inner(r, L):
            return _inner(r, L, use_hull, window)
        val, n = epsilon_even_outer(r, L)
        return SeshadriValue("exact", value=Surd.coerce(val), witness=curve_c(r, n),
                             note=f"outer bundle; computed by C_{n} = T_{r}^{n}(E)")
    return _epsilon_odd(r, L, use_hull, window)


def _epsilon_odd(r: int, L: AmpleBundle, use_hull: bool, window: int) -> SeshadriValue:
    c1, c2, c3, c4 = odd_c_curves(r)
    s = L.slope
    sr = odd_gap_top(r)
    if s <= Fraction(2, r + 1):
        c, tag = c1, "C1"
    elif Surd.coerce(s) <= 1 / sr:
        c, tag = c2, "C2"
    elif Surd.coerce(s) < sr:
        return _inner(r, L, use_hull, window)
    elif s <= Fraction(r + 1, 2):
        c, tag = c3, "C3"
    else:
        c, tag = c4, "C4"
    return SeshadriValue("exact", value=curve_ratio(c, L), witness=c,
                         note=f"odd r, slope outside (1/t, t) with t = min(s(r), alpha_r); computed by {tag}")
