"""Certified inner square-zero nef classes.

Sources: reflection of F1/F2 in the proper transform G0 of a curve G through the
specialized points, the family xi(e, r) = (2e^2, r, -2e), T_r-orbits for even r, and
pullbacks along (a, b) covers of P1 x P1. Nefness is certified by construction; the
generator audit here can only falsify, never prove.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .dynamics import curve_c, spectral_data, t_apply, xi as xi_n
from .errors import InvalidSetup, NotCertified, OddR, OutOfRangeE
from .exact import Surd
from .lattice import FullClass, SymClass, canonical


@dataclass(frozen=True)
class ReflectionSetup:
    """A smooth curve G of bidegree (g1, g2) through r specialized points."""

    r: int
    g1: int
    g2: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.g1 < 1 or self.g2 < 1:
            raise InvalidSetup("r, g1, g2 must be positive")
        gg = 2 * self.g1 * self.g2
        if self.r < abs(gg):
            raise InvalidSetup(f"r={self.r} < |G.G| = {gg}")
        if gg - self.r >= 0:
            raise InvalidSetup(f"G0.G0 = {gg - self.r} is not negative")
        if self.genus == 0 and (gg - self.r) % 2:
            raise InvalidSetup(f"G has genus 0 and G0.G0 = {gg - self.r} is odd")

    @property
    def genus(self) -> int:
        return (self.g1 - 1) * (self.g2 - 1)

    @property
    def g0(self) -> FullClass:
        return FullClass.uniform(self.r, self.g1, self.g2, 1)


def reflect(setup: ReflectionSetup, v: FullClass) -> FullClass:
    """v - 2 (v.G0 / G0.G0) G0."""
    g0 = setup.g0
    return v - g0.scale(2 * v.dot(g0) / g0.square())


def reflect_roundup(setup: ReflectionSetup, c: FullClass) -> FullClass:
    """c - ceil(2 c.G0 / G0.G0) G0."""
    g0 = setup.g0
    k = math.ceil(2 * c.dot(g0) / g0.square())
    return c - g0.scale(k)


@dataclass(frozen=True)
class CertifiedNefClass:
    cls: SymClass
    provenance: str
    details: dict = field(default_factory=dict, compare=False)

    @property
    def k_dot(self) -> Surd:
        return canonical(self.cls.r).dot(self.cls)

    @property
    def inner(self) -> bool:
        return self.k_dot.sign() > 0

    def mirrored(self) -> CertifiedNefClass:
        return CertifiedNefClass(self.cls.swap(), self.provenance + ", bidegrees swapped", dict(self.details))

    def to_json(self) -> dict:
        return {
            "class": self.cls.to_json(),
            "triple": self.cls.triple(),
            "k_dot": self.k_dot.to_json(),
            "inner": self.inner,
            "provenance": self.provenance,
        }


def _certify(cls: SymClass, provenance: str, **details) -> CertifiedNefClass:
    if cls.square() != 0:
        raise NotCertified(f"{cls.triple()} is not square-zero")
    if any(c.sign() < 0 for c in (cls.d1, cls.d2)) or cls.e.sign() > 0:
        raise NotCertified(f"{cls.triple()} is outside the positive octant")
    return CertifiedNefClass(cls, provenance, details)


def reflect_fibre(setup: ReflectionSetup, which: int = 2) -> CertifiedNefClass:
    """Reflection of F2 (or F1), scaled by r - G.G to be integral."""
    r = setup.r
    fib = FullClass.uniform(r, 1 if which == 1 else 0, 1 if which == 2 else 0, 0)
    out = reflect(setup, fib).scale(r - 2 * setup.g1 * setup.g2)
    return _certify(out.to_sym(), f"reflection of F{which} in G0, G of bidegree ({setup.g1},{setup.g2})",
                    g1=setup.g1, g2=setup.g2)


def e_range(r: int) -> range:
    """Admissible e for xi(e, r): 2 <= e <= (r-4)/2 (even r) or 2 <= e < r/4 (odd r)."""
    if r % 2 == 0:
        return range(2, (r - 4) // 2 + 1)
    return range(2, (r - 1) // 4 + 1)


def xi_e_r(e: int, r: int) -> CertifiedNefClass:
    """xi(e, r) = (2e^2, r, -2e), inner square-zero nef for e in the admissible range."""
    if r < 9:
        raise OutOfRangeE(f"r={r} < 9")
    if e < 2:
        raise OutOfRangeE(f"e={e} < 2")
    if r % 2 == 0 and 2 * e > r - 4:
        raise OutOfRangeE(f"e={e} > (r-4)/2")
    if r % 2 and 4 * e >= r:
        raise OutOfRangeE(f"e={e} >= r/4")
    g2 = 1 if r % 2 == 0 else 2
    cls = SymClass(r, 2 * e * e, r, -2 * e)
    return _certify(cls, f"xi({e},{r}): reflection of F2 in a curve of bidegree ({e},{g2})", e=e)


def xi_e_r_outer(r: int) -> SymClass:
    """xi((r-2)/2, r), which is the outer class 2 T_r^{-3}(F2)."""
    if r % 2:
        raise OddR(f"r={r} is odd")
    e = (r - 2) // 2
    return SymClass(r, 2 * e * e, r, -2 * e)


def orbit(base: CertifiedNefClass, r: int, ns: Iterable[int]) -> list[CertifiedNefClass]:
    """T_r^n(base) for n in ns, recertified."""
    if r % 2:
        raise OddR(f"r={r} is odd")
    out = []
    for n in ns:
        c = t_apply(r, base.cls, n)
        out.append(_certify(c, f"T_{r}^{n} of [{base.provenance}]", n=n))
    return out


def same_orbit(r: int, v: SymClass, w: SymClass, window: int = 10) -> Optional[bool]:
    """True if w is on the ray of T_r^n(v) for some |n| <= window; None if not found."""
    for n in range(-window, window + 1):
        if t_apply(r, v, n).is_proportional(w):
            return True
    return None


def pullback(a: int, b: int, v: SymClass) -> SymClass:
    """(d1, d2, -m) over r0 to (a d1, b d2, -m) over a b r0."""
    if a < 1 or b < 1:
        raise ValueError("a, b must be positive")
    return SymClass(a * b * v.r, a * v.d1, b * v.d2, v.e)


def pushforward(a: int, b: int, w: SymClass) -> SymClass:
    """(d1, d2, -m) over r to (b d1, a d2, -a b m) over r / (a b)."""
    if a < 1 or b < 1 or w.r % (a * b):
        raise ValueError("a b must divide r")
    return SymClass(w.r // (a * b), b * w.d1, a * w.d2, a * b * w.e)


def nef_preserving_pullback(a: int, b: int, cert: CertifiedNefClass) -> CertifiedNefClass:
    if not isinstance(cert, CertifiedNefClass):
        raise NotCertified("input carries no nef certificate")
    c = cert.cls
    if c.d1.sign() < 0 or c.d2.sign() < 0 or c.e.sign() > 0:
        raise NotCertified("pullback certificate needs a class in the positive octant")
    out = pullback(a, b, c)
    return _certify(out, f"pullback psi_{a},{b}^* of [{cert.provenance}]", a=a, b=b)


def anticanonical_r8() -> CertifiedNefClass:
    return _certify(SymClass(8, 2, 2, -1), "-K_X for r=8")


def effective_bound_check(r: int, xi: SymClass, c: SymClass) -> bool:
    """-r C^2 <= (C . xi)^2."""
    lhs = -r * c.square()
    d = c.dot(xi)
    return lhs <= d * d


def catalogued_generators(r: int, window: int = 20) -> list[SymClass]:
    """Known effective curve classes used to audit nef certificates."""
    from .seshadri import SMALL_R_TABLES, odd_c_curves

    if r <= 7:
        return [SymClass(r, *c) for _, c in SMALL_R_TABLES[r]]
    if r % 2:
        return list(odd_c_curves(r))
    return [curve_c(r, n) for n in range(-window, window + 1)]


def audit(cert: CertifiedNefClass, window: int = 20) -> bool:
    """Necessary condition for nefness: nonnegative against every catalogued curve."""
    return all(cert.cls.dot(c).sign() >= 0 for c in catalogued_generators(cert.cls.r, window))


def base_classes(r0: int, window: int = 5) -> list[CertifiedNefClass]:
    """Classes over r0 that the default generating set pulls back."""
    if r0 == 8:
        return [anticanonical_r8()]
    out: list[CertifiedNefClass] = []
    for e in e_range(r0):
        c = xi_e_r(e, r0)
        out += [c, c.mirrored()]
    if r0 % 2 == 0:
        orb: list[CertifiedNefClass] = []
        for c in out:
            orb += orbit(c, r0, [n for n in range(-window, window + 1) if n])
        out += orb
        out += [_certify(xi_n(r0, n), f"xi_{n} = T_{r0}^{n}(F2)", n=n) for n in range(-window, window + 2)]
    return out


@lru_cache(maxsize=256)
def certified_classes(r: int, window: int = 5) -> tuple[CertifiedNefClass, ...]:
    """All certificates from the default generating set, deduplicated by ray."""
    found: list[CertifiedNefClass] = []
    if r >= 9:
        for e in e_range(r):
            c = xi_e_r(e, r)
            found += [c, c.mirrored()]
    for ab in range(2, r // 8 + 1):
        if r % ab:
            continue
        r0 = r // ab
        if r0 < 8:
            continue
        for a in range(1, ab + 1):
            if ab % a:
                continue
            b = ab // a
            for base in base_classes(r0, window):
                pb = nef_preserving_pullback(a, b, base)
                if pb.inner:
                    found.append(pb)
    if r % 2 == 0 and r >= 10:
        extra: list[CertifiedNefClass] = []
        for c in found:
            extra += orbit(c, r, [n for n in range(-window, window + 1) if n])
        found += extra
    found = [c for c in found if c.inner]
    seen: set = set()
    out = []
    for c in found:
        key = c.cls.primitive().coords if c.cls.is_rational else c.cls.coords
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    return tuple(out)


def v_alpha_pullback(a: int, b: int, r0: int) -> CertifiedNefClass:
    """psi_{a,b}^* of v_alpha over even r0 >= 10: square-zero nef, K-positive when (a,b) != (1,1)."""
    sd = spectral_data(r0)
    base = CertifiedNefClass(sd.v_alpha, f"v_alpha for r={r0} (limit of nef xi_n)")
    return nef_preserving_pullback(a, b, base)


# ---------------------------------------------------------------- targeted lookup


def _square_zero_ray(r: int, s: Fraction) -> SymClass:
    """The square-zero class (1, s, -sqrt(2s/r)) on slope s."""
    return SymClass(r, 1, s, -Surd.sqrt(Fraction(2) * s / r))


def _slope(v: SymClass) -> Optional[Fraction]:
    # a square-zero slope fixes the ray only up to the sign of e
    if v.d1.sign() <= 0 or v.d2.sign() <= 0 or v.e.sign() > 0:
        return None
    t = v.d2 / v.d1
    return t.to_fraction() if t.is_rational else None


def _xi_e_match(r: int, t: Fraction) -> Optional[CertifiedNefClass]:
    """xi(e, r) or its mirror with slope t."""
    if r < 9:
        return None
    for cand, mirrored in ((Fraction(r) / (2 * t), False), (Fraction(r) * t / 2, True)):
        if cand.denominator != 1:
            continue
        e = math.isqrt(cand.numerator)
        if e * e == cand.numerator and e in e_range(r):
            c = xi_e_r(e, r)
            return c.mirrored() if mirrored else c
    return None


def _base_match(r0: int, t: Fraction, window: int) -> Optional[CertifiedNefClass]:
    """A base class over r0 on slope t, as enumerated by the default generating set."""
    if r0 == 8:
        return anticanonical_r8() if t == 1 else None
    hit = _xi_e_match(r0, t)
    if hit is not None:
        return hit
    if r0 % 2:
        return None
    for n in range(-window, window + 2):
        x = xi_n(r0, n)
        if _slope(x) == t:
            return _certify(x, f"xi_{n} = T_{r0}^{n}(F2)", n=n)
    v = _square_zero_ray(r0, t)
    for n in range(-window, window + 1):
        if n == 0:
            continue
        b = _slope(t_apply(r0, v, -n))
        if b is None:
            continue
        base = _xi_e_match(r0, b)
        if base is not None:
            return orbit(base, r0, [n])[0]
    return None


def _direct_match(r: int, t: Fraction, window: int) -> Optional[CertifiedNefClass]:
    hit = _xi_e_match(r, t)
    if hit is not None:
        return hit
    for ab in range(2, r // 8 + 1):
        if r % ab or r // ab < 8:
            continue
        for a in range(1, ab + 1):
            if ab % a:
                continue
            b = ab // a
            base = _base_match(r // ab, t * a / b, window)
            if base is not None:
                pb = nef_preserving_pullback(a, b, base)
                if pb.inner:
                    return pb
    return None


def find_certificate(r: int, slope, window: int = 5) -> Optional[CertifiedNefClass]:
    """A certificate from certified_classes(r, window) on the given slope, without enumerating them."""
    t = Fraction(slope)
    if t <= 0:
        return None
    hit = _direct_match(r, t, window)
    if hit is not None and hit.inner:
        return hit
    if r % 2 or r < 10:
        return None
    v = _square_zero_ray(r, t)
    for n in range(-window, window + 1):
        if n == 0:
            continue
        b = _slope(t_apply(r, v, -n))
        if b is None:
            continue
        base = _direct_match(r, b, window)
        if base is not None and base.inner:
            return orbit(base, r, [n])[0]
    return None
