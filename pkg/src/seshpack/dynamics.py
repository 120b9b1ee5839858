"""The isometry T_r of V_r, its eigen-data, the p/m/q sequences and the phi chart.

T_r acts on column vectors ``(d1, d2, e)`` by the matrix with rows
``[0,1,0], [1,r/2,r], [0,-1,-1]``; so T_r(E) = (0, r, -1) and T_r(F2) = (1, r/2, -1).
Only this module (and the oracle) uses floating point, and only for phi_r.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
from mpmath.ctx_iv import MPIntervalContext

from .errors import IncompatibleRadicands, MismatchedR, NotSquareZero, OddR, OnEigenRay
from .exact import Surd
from .lattice import SymClass, canonical, e_class, f2

Matrix = tuple[tuple[Fraction, ...], ...]

DEFAULT_PRECISION = 256


def _require_even(r: int, minimum: int = 2) -> None:
    if r % 2:
        raise OddR(f"T_r is only an automorphism for even r (got r={r})")
    if r < minimum:
        raise ValueError(f"r must be at least {minimum}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)) for i in range(n))


def identity(n: int = 3) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_pow(m: Matrix, n: int) -> Matrix:
    out, base = identity(len(m)), m
    while n:
        if n & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        n >>= 1
    return out


def t_matrix(r: int) -> Matrix:
    _require_even(r)
    h = Fraction(r, 2)
    F = Fraction
    return ((F(0), F(1), F(0)), (F(1), h, F(r)), (F(0), F(-1), F(-1)))


def t_inverse_matrix(r: int) -> Matrix:
    # equals S T S with S the swap of d1 and d2
    _require_even(r)
    h = Fraction(r, 2)
    F = Fraction
    return ((h, F(1), F(r)), (F(1), F(0), F(0)), (F(-1), F(0), F(-1)))


def swap_matrix() -> Matrix:
    F = Fraction
    return ((F(0), F(1), F(0)), (F(1), F(0), F(0)), (F(0), F(0), F(1)))


def gram_matrix(r: int) -> Matrix:
    F = Fraction
    return ((F(0), F(1), F(0)), (F(1), F(0), F(0)), (F(0), F(0), F(-r)))


@lru_cache(maxsize=512)
def t_power_matrix(r: int, n: int) -> Matrix:
    if n >= 0:
        return mat_pow(t_matrix(r), n)
    return mat_pow(t_inverse_matrix(r), -n)


def apply_matrix(m: Matrix, v: SymClass) -> SymClass:
    c = v.coords
    out = []
    for row in m:
        acc = Surd.coerce(0)
        for coef, x in zip(row, c):
            if coef:
                acc = acc + x * coef
        out.append(acc)
    return SymClass(v.r, *out)


def t_apply(r: int, v: SymClass, n: int = 1) -> SymClass:
    """T_r^n(v), exact."""
    _require_even(r)
    if v.r != r:
        raise MismatchedR(f"class over r={v.r}, map over r={r}")
    if n == 0:
        return v
    return apply_matrix(t_power_matrix(r, n), v)


# ---------------------------------------------------------------- sequences

class SequenceTriple:
    """Two-sided integer sequences p, m, q for even r, memoized on demand.

    All three satisfy s_n = ((r-2)/2)(s_{n-1} - s_{n-2}) + s_{n-3}.
    """

    def __init__(self, r: int) -> None:
        _require_even(r)
        self.r = r
        self.c = (r - 2) // 2
        self._lock = threading.Lock()
        self._data = {
            "p": {-1: 0, 0: 0, 1: r},
            "m": {-1: 1, 0: -1, 1: 1},
            "q": {-1: 1, 0: 0, 1: 1},
        }

    def _get(self, name: str, n: int) -> int:
        d = self._data[name]
        if n in d:
            return d[n]
        with self._lock:
            c = self.c
            if n > 0:
                k = max(d)
                while k < n:
                    k += 1
                    d[k] = c * (d[k - 1] - d[k - 2]) + d[k - 3]
            else:
                k = min(d)
                while k > n:
                    k -= 1
                    # s_k = s_{k+3} - c (s_{k+2} - s_{k+1})
                    d[k] = d[k + 3] - c * (d[k + 2] - d[k + 1])
            return d[n]

    def p(self, n: int) -> int:
        return self._get("p", n)

    def m(self, n: int) -> int:
        return self._get("m", n)

    def q(self, n: int) -> int:
        return self._get("q", n)

    def slope(self, n: int) -> Fraction | None:
        """Slope q_{n+1}/q_n of xi_n, or None when q_n = 0."""
        qn = self.q(n)
        if qn == 0:
            return None
        return Fraction(self.q(n + 1), qn)


@lru_cache(maxsize=256)
def sequences(r: int) -> SequenceTriple:
    return SequenceTriple(r)


def xi(r: int, n: int) -> SymClass:
    """xi_n = T_r^n(F2) = (q_n, q_{n+1}, -sqrt(2 q_n q_{n+1} / r))."""
    s = sequences(r)
    qn, qn1 = s.q(n), s.q(n + 1)
    return SymClass(r, qn, qn1, -Surd.sqrt(Fraction(2 * qn * qn1, r)))


def curve_c(r: int, n: int) -> SymClass:
    """C_n = T_r^n(E) = (p_{n-1}, p_n, -m_n)."""
    s = sequences(r)
    return SymClass(r, s.p(n - 1), s.p(n), -s.m(n))


def xi_r8(n: int) -> SymClass:
    """Closed form of T_8^n(F2)."""
    return SymClass(8, n * n, (n + 1) ** 2, Fraction(-n * (n + 1), 2))


def curve_c_r8(n: int) -> SymClass:
    """Closed form of T_8^n(E)."""
    return SymClass(8, 4 * n * (n - 1), 4 * n * (n + 1), 1 - 2 * n * n)


# ---------------------------------------------------------------- eigen-data


@dataclass(frozen=True)
class SpectralData:
    r: int
    alpha: Surd
    beta: Surd
    v_alpha: SymClass
    v_beta: SymClass
    k_class: SymClass


@lru_cache(maxsize=256)
def spectral_data(r: int) -> SpectralData:
    """alpha_r, beta_r = ((r-4) +- sqrt(r(r-8)))/4 with eigenvectors; r even, r >= 8."""
    _require_even(r, 8)
    alpha = Surd(Fraction(r - 4, 4), Fraction(1, 4), r * (r - 8))
    beta = alpha.conjugate()

    def vec(a: Surd) -> SymClass:
        return SymClass(r, 1 / (a + 1), a / (a + 1), Fraction(-2, r))

    return SpectralData(r, alpha, beta, vec(alpha), vec(beta), canonical(r))


def alpha(r: int) -> Surd:
    return spectral_data(r).alpha


def beta(r: int) -> Surd:
    return spectral_data(r).beta


# ---------------------------------------------------------------- phi chart


def _split_by_radicand(w: SymClass, s: int) -> tuple[SymClass, SymClass]:
    # w = A + B*sqrt(s) coordinatewise, with A, B rational classes
    if any(c.radicand not in (0, s) for c in w.coords):
        raise ValueError("unexpected radicand")
    A = SymClass(w.r, *(c.a for c in w.coords))
    B = SymClass(w.r, *(c.b for c in w.coords))
    return A, B


def _pairing_is_zero(v: SymClass, w: SymClass) -> bool:
    try:
        return v.dot(w) == 0
    except IncompatibleRadicands:
        s = next(c.radicand for c in w.coords if c.radicand)
        A, B = _split_by_radicand(w, s)
        # 1 and sqrt(s) are independent over the field generated by v's coordinates
        return v.dot(A) == 0 and v.dot(B) == 0


def _iv_context(prec: int) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


def _iv_pair(ctx, r: int, v: Sequence, w: Sequence):
    return v[0] * w[1] + v[1] * w[0] - r * v[2] * w[2]


@dataclass(frozen=True)
class PhiValue:
    value: mpmath.mpf
    radius: mpmath.mpf
    prec: int

    def floor_half(self) -> int | None:
        """floor(phi + 1/2) if the enclosure decides it, else None."""
        with mpmath.workprec(self.prec):
            lo = mpmath.floor(self.value - self.radius + mpmath.mpf(1) / 2)
            hi = mpmath.floor(self.value + self.radius + mpmath.mpf(1) / 2)
        return int(lo) if lo == hi else None


def phi_r(r: int, v: SymClass, prec: int = DEFAULT_PRECISION) -> PhiValue:
    """phi_r(v) = log((v.v_beta)/(v.v_alpha)) / (2 log alpha_r), with a certified radius."""
    _require_even(r, 10)
    if v.square() != 0:
        raise NotSquareZero(f"{v.triple()} has nonzero square")
    sd = spectral_data(r)
    if _pairing_is_zero(v, sd.v_alpha) or _pairing_is_zero(v, sd.v_beta):
        raise OnEigenRay(f"{v.triple()} lies on an eigenray of T_{r}")
    ctx = _iv_context(prec + 32)
    vv = [c.to_mpf(ctx) for c in v.coords]
    va = [c.to_mpf(ctx) for c in sd.v_alpha.coords]
    vb = [c.to_mpf(ctx) for c in sd.v_beta.coords]
    num = _iv_pair(ctx, r, vv, vb)
    den = _iv_pair(ctx, r, vv, va)
    ratio = num / den
    if not ratio.a > 0:
        raise ValueError("pairings with the eigenvectors have opposite signs")
    phi = ctx.log(ratio) / (2 * ctx.log(sd.alpha.to_mpf(ctx)))
    with mpmath.workprec(prec + 32):
        mid = mpmath.mpf(phi.mid)
        rad = mpmath.mpf(phi.delta) / 2
    return PhiValue(mid, rad, prec)


def phi_real(r: int, coords: Sequence, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """phi_r on real coordinates (uncertified)."""
    sd = spectral_data(r)
    with mpmath.workprec(prec):
        v = [mpmath.mpf(x) for x in coords]
        va = [c.to_mpf() for c in sd.v_alpha.coords]
        vb = [c.to_mpf() for c in sd.v_beta.coords]
        num = v[0] * vb[1] + v[1] * vb[0] - r * v[2] * vb[2]
        den = v[0] * va[1] + v[1] * va[0] - r * v[2] * va[2]
        return mpmath.log(num / den) / (2 * mpmath.log(sd.alpha.to_mpf()))


def t_real_power(r: int, v, s, prec: int = DEFAULT_PRECISION) -> tuple:
    """T_r^s(v) for real s, via the eigenbasis (v_alpha, v_beta, K_X)."""
    _require_even(r, 10)
    sd = spectral_data(r)
    with mpmath.workprec(prec):
        coords = [c.to_mpf() if isinstance(c, Surd) else mpmath.mpf(c) for c in
                  (v.coords if isinstance(v, SymClass) else v)]
        basis = [sd.v_alpha, sd.v_beta, sd.k_class]
        m = mpmath.matrix(3, 3)
        for j, b in enumerate(basis):
            for i, c in enumerate(b.coords):
                m[i, j] = c.to_mpf()
        a, b, k = mpmath.lu_solve(m, mpmath.matrix(coords))
        al = sd.alpha.to_mpf()
        s = mpmath.mpf(s)
        scal = (a * al**s, b * al ** (-s), k)
        out = [sum(scal[j] * m[i, j] for j in range(3)) for i in range(3)]
        return tuple(out)


def characteristic_check(r: int) -> bool:
    """T^3 - ((r-2)/2)(T^2 - T) - I == 0."""
    t = t_matrix(r)
    t2 = mat_mul(t, t)
    t3 = mat_mul(t2, t)
    c = Fraction(r - 2, 2)
    eye = identity()
    return all(t3[i][j] - c * (t2[i][j] - t[i][j]) - eye[i][j] == 0 for i in range(3) for j in range(3))


__all__ = [
    "SequenceTriple", "SpectralData", "PhiValue", "t_matrix", "t_inverse_matrix", "swap_matrix",
    "gram_matrix", "t_apply", "t_power_matrix", "apply_matrix", "mat_mul", "mat_pow", "identity",
    "sequences", "xi", "curve_c", "xi_r8", "curve_c_r8", "spectral_data", "alpha", "beta",
    "phi_r", "phi_real", "t_real_power", "characteristic_check", "e_class", "f2",
]
