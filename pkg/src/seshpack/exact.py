"""Exact rationals and quadratic surds.

Rationals are ``fractions.Fraction``. A :class:`Surd` is ``a + b*sqrt(s)`` with
rational ``a, b`` and a squarefree integer radicand ``s``. Every ordering
decision is made with integer arithmetic; floats never decide anything here.
"""

from __future__ import annotations

import enum
import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import IncompatibleRadicands

Rational = Fraction
RationalLike = Union[int, Fraction]
SurdLike = Union[int, Fraction, "Surd"]

_TRIAL_LIMIT = 10**5


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def as_fraction(x: RationalLike | str) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _icbrt(n: int) -> int:
    lo, hi = 0, 1 << ((n.bit_length() + 2) // 3 + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**3 <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, s)`` with ``n == k*k*s`` and ``s`` squarefree (``s == 0`` iff ``n == 0``)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    cube = _icbrt(n) + 1
    limit = min(cube, _TRIAL_LIMIT)
    k, s, m, p = 1, 1, n, 2
    while p <= limit and p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            k *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    if m == 1:
        return k, s
    root = math.isqrt(m)
    if root * root == m:
        return k * root, s
    if p * p > m or limit >= cube:
        # m is a prime, or a product of two distinct primes above cbrt(n)
        return k, s * m
    from sympy import factorint  # only reached for very large radicands

    for q, e in factorint(m).items():
        k *= q ** (e // 2)
        if e % 2:
            s *= q
    return k, s


class Surd:
    """Exact real number ``a + b*sqrt(radicand)`` in canonical form."""

    __slots__ = ("_a", "_b", "_s")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, radicand: int = 0) -> None:
        a = as_fraction(a)
        b = as_fraction(b)
        if radicand < 0:
            raise ValueError("radicand must be nonnegative")
        if b == 0 or radicand == 0:
            self._set(a, Fraction(0), 0)
            return
        k, s = squarefree_split(radicand)
        if s == 1:
            self._set(a + b * k, Fraction(0), 0)
        else:
            self._set(a, b * k, s)

    def _set(self, a: Fraction, b: Fraction, s: int) -> None:
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_s", s)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, s: int) -> Surd:
        # trusted constructor: s already squarefree
        out = cls.__new__(cls)
        if b == 0 or s == 0:
            out._set(a, Fraction(0), 0)
        else:
            out._set(a, b, s)
        return out

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Surd is immutable")

    @classmethod
    def coerce(cls, x: SurdLike) -> Surd:
        if isinstance(x, Surd):
            return x
        return cls._raw(as_fraction(x), Fraction(0), 0)

    @classmethod
    def sqrt(cls, x: RationalLike) -> Surd:
        """The nonnegative square root of a nonnegative rational."""
        x = as_fraction(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, x.denominator), x.numerator * x.denominator)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def radicand(self) -> int:
        return self._s

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self._a

    def canon(self) -> Surd:
        return Surd(self._a, self._b, self._s)

    def _common(self, other: Surd) -> int:
        if self._s == other._s or other._b == 0:
            return self._s
        if self._b == 0:
            return other._s
        raise IncompatibleRadicands(f"sqrt({self._s}) and sqrt({other._s})")

    def __add__(self, other: SurdLike) -> Surd:
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        o = Surd.coerce(other)
        s = self._common(o)
        return Surd._raw(self._a + o._a, self._b + o._b, s)

    __radd__ = __add__

    def __neg__(self) -> Surd:
        return Surd._raw(-self._a, -self._b, self._s)

    def __pos__(self) -> Surd:
        return self

    def __sub__(self, other: SurdLike) -> Surd:
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return self + (-Surd.coerce(other))

    def __rsub__(self, other: SurdLike) -> Surd:
        return Surd.coerce(other) - self

    def __mul__(self, other: SurdLike) -> Surd:
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        o = Surd.coerce(other)
        if o is self or o == self:
            s = self._s
        else:
            s = self._common(o)
        a = self._a * o._a + self._b * o._b * s
        b = self._a * o._b + self._b * o._a
        return Surd._raw(a, b, s)

    __rmul__ = __mul__

    def conjugate(self) -> Surd:
        return Surd._raw(self._a, -self._b, self._s)

    def norm(self) -> Fraction:
        """Field norm a^2 - b^2 s."""
        return self._a * self._a - self._b * self._b * self._s

    def inverse(self) -> Surd:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Surd division by zero")
        c = self.conjugate()
        return Surd._raw(c._a / n, c._b / n, c._s)

    def __truediv__(self, other: SurdLike) -> Surd:
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        o = Surd.coerce(other)
        if o.is_rational:
            if o._a == 0:
                raise ZeroDivisionError("Surd division by zero")
            return Surd._raw(self._a / o._a, self._b / o._a, self._s)
        self._common(o)
        return self * o.inverse()

    def __rtruediv__(self, other: SurdLike) -> Surd:
        return Surd.coerce(other) / self

    def __pow__(self, n: int) -> Surd:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Surd.coerce(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sign(self) -> int:
        """Sign of the value, by integer sign analysis and one squaring."""
        sa = (self._a > 0) - (self._a < 0)
        sb = (self._b > 0) - (self._b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        lhs = self._a * self._a
        rhs = self._b * self._b * self._s
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sb
        return 0

    def cmp(self, other: SurdLike) -> Ordering:
        return Ordering((self - Surd.coerce(other)).sign())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._b == 0 and self._a == other
        if not isinstance(other, Surd):
            return NotImplemented
        return self._a == other._a and self._b == other._b and self._s == other._s

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._s))

    def __lt__(self, other: SurdLike) -> bool:
        return self.cmp(other) < 0

    def __le__(self, other: SurdLike) -> bool:
        return self.cmp(other) <= 0

    def __gt__(self, other: SurdLike) -> bool:
        return self.cmp(other) > 0

    def __ge__(self, other: SurdLike) -> bool:
        return self.cmp(other) >= 0

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __abs__(self) -> Surd:
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        if self._b == 0:
            return math.floor(self._a)
        # b*sqrt(s) = sign(b)*sqrt(b^2 s); bracket it with isqrt on a common denominator
        d = math.lcm(self._a.denominator, self._b.denominator)
        big = (self._b * d) ** 2 * self._s
        root = math.isqrt(big.numerator)
        guess = math.floor((self._a * d + (root if self._b > 0 else -root)) / d)
        while Surd.coerce(guess) > self:
            guess -= 1
        while Surd.coerce(guess + 1) <= self:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * math.sqrt(self._s)

    def to_mpf(self, ctx=None):
        """Evaluate in an mpmath context (real or interval)."""
        import mpmath

        ctx = ctx or mpmath.mp
        a = ctx.mpf(self._a.numerator) / self._a.denominator
        if self._b == 0:
            return a
        b = ctx.mpf(self._b.numerator) / self._b.denominator
        return a + b * ctx.sqrt(ctx.mpf(self._s))

    def to_json(self) -> dict[str, str]:
        return {
            "a_num": str(self._a.numerator),
            "a_den": str(self._a.denominator),
            "b_num": str(self._b.numerator),
            "b_den": str(self._b.denominator),
            "radicand": str(self._s),
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> Surd:
        if isinstance(obj, str):
            obj = json.loads(obj)
        a = Fraction(int(obj["a_num"]), int(obj["a_den"]))
        b = Fraction(int(obj["b_num"]), int(obj["b_den"]))
        return cls(a, b, int(obj["radicand"]))

    def __repr__(self) -> str:
        return f"Surd({self._a!s}, {self._b!s}, {self._s})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        root = f"sqrt({self._s})"
        if self._b == 1:
            tail = root
        elif self._b == -1:
            tail = "-" + root
        else:
            tail = f"{self._b}*{root}"
        if self._a == 0:
            return tail
        if tail.startswith("-"):
            return f"{self._a} - {tail[1:]}"
        return f"{self._a} + {tail}"


def surd_add(x: Surd, y: Surd) -> Surd:
    return Surd.coerce(x) + y


def surd_mul(x: Surd, y: Surd) -> Surd:
    return Surd.coerce(x) * y


def surd_cmp(x: Surd, y: Surd) -> Ordering:
    return Surd.coerce(x).cmp(y)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string, rejecting floats."""
    text = text.strip()
    if any(c in text for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)
