"""The symmetric slice V_r and the full blowup lattice.

A :class:`SymClass` ``(d1, d2, e)`` is ``d1*F1 + d2*F2 + e*E`` where ``E`` is the
sum of the exceptional curves, so a curve written ``(d1, d2, -m)`` has ``e = -m``.
The pairing has Gram matrix ``[[0,1,0],[1,0,0],[0,0,-r]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import MismatchedR, NegativeGamma, NonPositiveBundle
from .exact import Surd, SurdLike, as_fraction


def _s(x: SurdLike) -> Surd:
    return Surd.coerce(x)


@dataclass(frozen=True)
class SymClass:
    r: int
    d1: Surd
    d2: Surd
    e: Surd

    def __init__(self, r: int, d1: SurdLike, d2: SurdLike, e: SurdLike) -> None:
        if r < 1:
            raise ValueError("r must be positive")
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "d1", _s(d1))
        object.__setattr__(self, "d2", _s(d2))
        object.__setattr__(self, "e", _s(e))

    @property
    def coords(self) -> tuple[Surd, Surd, Surd]:
        return (self.d1, self.d2, self.e)

    @property
    def is_rational(self) -> bool:
        return all(c.is_rational for c in self.coords)

    def _check(self, other: SymClass) -> None:
        if self.r != other.r:
            raise MismatchedR(f"r={self.r} vs r={other.r}")

    def dot(self, other: SymClass) -> Surd:
        self._check(other)
        return self.d1 * other.d2 + self.d2 * other.d1 - self.r * (self.e * other.e)

    def square(self) -> Surd:
        return self.dot(self)

    def __add__(self, other: SymClass) -> SymClass:
        self._check(other)
        return SymClass(self.r, self.d1 + other.d1, self.d2 + other.d2, self.e + other.e)

    def __sub__(self, other: SymClass) -> SymClass:
        return self + (-other)

    def __neg__(self) -> SymClass:
        return SymClass(self.r, -self.d1, -self.d2, -self.e)

    def scale(self, c: SurdLike) -> SymClass:
        c = _s(c)
        return SymClass(self.r, c * self.d1, c * self.d2, c * self.e)

    def swap(self) -> SymClass:
        return SymClass(self.r, self.d2, self.d1, self.e)

    def with_r(self, r: int) -> SymClass:
        return SymClass(r, self.d1, self.d2, self.e)

    def primitive(self) -> SymClass:
        """The primitive integral class on the same ray (rational classes only)."""
        import math

        fr = [c.to_fraction() for c in self.coords]
        den = math.lcm(*(f.denominator for f in fr))
        ints = [int(f * den) for f in fr]
        g = math.gcd(*ints)
        if g == 0:
            return self
        return SymClass(self.r, *(Fraction(i, g) for i in ints))

    def is_proportional(self, other: SymClass) -> bool:
        """Positive proportionality (same ray)."""
        self._check(other)
        a, b = self.coords, other.coords
        for i in range(3):
            for j in range(3):
                if a[i] * b[j] != a[j] * b[i]:
                    return False
        return any((x * y).sign() > 0 for x, y in zip(a, b))

    def triple(self) -> str:
        """The class as written in the literature, ``(d1, d2, -m)``."""
        return f"({self.d1}, {self.d2}, {self.e})"

    def to_json(self) -> dict:
        return {"r": self.r, "d1": self.d1.to_json(), "d2": self.d2.to_json(), "e": self.e.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> SymClass:
        return cls(int(obj["r"]), Surd.from_json(obj["d1"]), Surd.from_json(obj["d2"]), Surd.from_json(obj["e"]))

    def __repr__(self) -> str:
        return f"SymClass(r={self.r}, {self.triple()})"


def pair_sym(v: SymClass, w: SymClass) -> Surd:
    return v.dot(w)


def f1(r: int) -> SymClass:
    return SymClass(r, 1, 0, 0)


def f2(r: int) -> SymClass:
    return SymClass(r, 0, 1, 0)


def e_class(r: int) -> SymClass:
    return SymClass(r, 0, 0, 1)


def canonical(r: int) -> SymClass:
    """K_X = -2F1 - 2F2 + E."""
    return SymClass(r, -2, -2, 1)


@dataclass(frozen=True)
class FullClass:
    """``d1*F1 + d2*F2 - sum m_i E_i`` with exact rational coefficients."""

    r: int
    d1: Fraction
    d2: Fraction
    mults: tuple[Fraction, ...]

    def __init__(self, r: int, d1, d2, mults: Iterable) -> None:
        mults = tuple(as_fraction(m) for m in mults)
        if len(mults) != r:
            raise ValueError(f"expected {r} multiplicities, got {len(mults)}")
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "d1", as_fraction(d1))
        object.__setattr__(self, "d2", as_fraction(d2))
        object.__setattr__(self, "mults", mults)

    @classmethod
    def uniform(cls, r: int, d1, d2, m) -> FullClass:
        return cls(r, d1, d2, [m] * r)

    def _check(self, other: FullClass) -> None:
        if self.r != other.r:
            raise MismatchedR(f"r={self.r} vs r={other.r}")

    def dot(self, other: FullClass) -> Fraction:
        self._check(other)
        return (
            self.d1 * other.d2
            + self.d2 * other.d1
            - sum((a * b for a, b in zip(self.mults, other.mults)), Fraction(0))
        )

    def square(self) -> Fraction:
        return self.dot(self)

    def __add__(self, other: FullClass) -> FullClass:
        self._check(other)
        return FullClass(self.r, self.d1 + other.d1, self.d2 + other.d2,
                         [a + b for a, b in zip(self.mults, other.mults)])

    def __sub__(self, other: FullClass) -> FullClass:
        return self + other.scale(-1)

    def scale(self, c) -> FullClass:
        c = as_fraction(c)
        return FullClass(self.r, c * self.d1, c * self.d2, [c * m for m in self.mults])

    def permute(self, perm: Sequence[int]) -> FullClass:
        return FullClass(self.r, self.d1, self.d2, [self.mults[i] for i in perm])

    @property
    def is_symmetric(self) -> bool:
        return len(set(self.mults)) <= 1

    def to_sym(self) -> SymClass:
        """Isometric embedding of an equal-multiplicity class into V_r."""
        if not self.is_symmetric:
            raise ValueError("multiplicities are not all equal")
        return SymClass(self.r, self.d1, self.d2, -self.mults[0])

    def to_json(self) -> dict:
        return {"r": self.r, "d1": str(self.d1), "d2": str(self.d2), "mults": [str(m) for m in self.mults]}


def pair_full(v: FullClass, w: FullClass) -> Fraction:
    return v.dot(w)


def canonical_full(r: int) -> FullClass:
    return FullClass.uniform(r, -2, -2, -1)


def symmetrize(v: FullClass) -> SymClass:
    """Sum over the orbit of an r-cycle: ``(r*d1, r*d2, -sum m_i)``."""
    return SymClass(v.r, v.r * v.d1, v.r * v.d2, -sum(v.mults, Fraction(0)))


def expected_dim(c: FullClass) -> Fraction:
    """max(0, (C^2 - K.C)/2 + 1)."""
    val = (c.square() - canonical_full(c.r).dot(c)) / 2 + 1
    return max(Fraction(0), val)


@dataclass(frozen=True)
class AmpleBundle:
    """O(e1, e2) on P1 x P1, with exact positive rational bidegree."""

    e1: Fraction
    e2: Fraction

    def __init__(self, e1, e2) -> None:
        e1, e2 = as_fraction(e1), as_fraction(e2)
        if e1 <= 0 or e2 <= 0:
            raise NonPositiveBundle(f"bidegree ({e1}, {e2}) is not ample")
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)

    @property
    def slope(self) -> Fraction:
        return self.e2 / self.e1

    def swap(self) -> AmpleBundle:
        return AmpleBundle(self.e2, self.e1)

    def scale(self, c) -> AmpleBundle:
        return AmpleBundle(c * self.e1, c * self.e2)

    def pullback(self, r: int) -> SymClass:
        return SymClass(r, self.e1, self.e2, 0)

    def square(self) -> Fraction:
        return 2 * self.e1 * self.e2


def l_gamma(bundle: AmpleBundle, r: int, gamma: SurdLike) -> SymClass:
    """pi^*L - gamma*E."""
    gamma = Surd.coerce(gamma)
    if gamma.sign() < 0:
        raise NegativeGamma(f"gamma = {gamma} < 0")
    return SymClass(r, bundle.e1, bundle.e2, -gamma)
