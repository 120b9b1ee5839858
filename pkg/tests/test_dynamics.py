from fractions import Fraction as F

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from seshpack.dynamics import (
    alpha, beta, characteristic_check, curve_c, identity, mat_mul, phi_r, sequences, spectral_data,
    t_apply, t_inverse_matrix, t_matrix, t_real_power, xi,
)
from seshpack.errors import MismatchedR, NotSquareZero, OddR, OnEigenRay
from seshpack.exact import Surd
from seshpack.lattice import SymClass, canonical, e_class, f2
from seshpack.oracle import _raw_t

even_r = st.integers(min_value=1, max_value=30).map(lambda k: 2 * k)
ints = st.integers(min_value=-30, max_value=30)


@settings(max_examples=200)
@given(even_r, ints, ints, ints, st.integers(min_value=-15, max_value=15))
def test_t_matches_raw_iteration(r, a, b, c, n):
    v = SymClass(r, a, b, c)
    raw = (F(a), F(b), F(c))
    for _ in range(abs(n)):
        raw = _raw_t(r, raw, inverse=n < 0)
    assert t_apply(r, v, n).coords == tuple(Surd.coerce(x) for x in raw)


@given(even_r)
def test_inverse_and_k_fixed(r):
    assert mat_mul(t_matrix(r), t_inverse_matrix(r)) == identity()
    assert t_apply(r, canonical(r)) == canonical(r)


@given(even_r)
def test_characteristic_polynomial(r):
    assert characteristic_check(r)
    t = sympy.symbols("t")
    cp = sympy.Matrix(t_matrix(r)).charpoly(t).as_expr()
    # (t - 1)(t^2 - ((r - 4)/2) t + 1); the eigenvalue 1 belongs to K
    assert sympy.expand(cp - (t - 1) * (t**2 - sympy.Rational(r - 4, 2) * t + 1)) == 0


def test_odd_and_mismatched():
    with pytest.raises(OddR):
        t_apply(9, SymClass(9, 1, 0, 0))
    with pytest.raises(MismatchedR):
        t_apply(10, SymClass(12, 1, 0, 0))


def test_small_values():
    assert xi(10, 2) == SymClass(10, 5, 16, -4)
    assert xi(10, -3) == SymClass(10, 16, 5, -4)
    assert curve_c(10, 2) == SymClass(10, 10, 40, -9)
    assert curve_c(8, 1) == SymClass(8, 0, 8, -1)
    assert curve_c(10, 0) == e_class(10)
    seq = sequences(10)
    assert [seq.q(n) for n in range(0, 5)] == [0, 1, 5, 16, 45]


def test_outer_identity_for_xi_e_r():
    # (2e^2, r, -2e) with e = (r - 2)/2 is 2 T^{-3}(F2)
    for r in range(10, 40, 2):
        e = (r - 2) // 2
        assert t_apply(r, f2(r), -3).scale(2) == SymClass(r, 2 * e * e, r, -2 * e)


def test_spectral_data():
    assert alpha(12) == Surd(2, 1, 3)
    assert beta(12) == Surd(2, -1, 3)
    for r in range(8, 40, 2):
        sd = spectral_data(r)
        assert sd.alpha * sd.beta == 1
        assert t_apply(r, sd.v_alpha) == sd.v_alpha.scale(sd.alpha)
        assert t_apply(r, sd.v_beta) == sd.v_beta.scale(sd.beta)
        assert sd.v_alpha.square() == 0
    sd8 = spectral_data(8)
    assert sd8.v_alpha == sd8.v_beta == canonical(8).scale(F(-1, 4))


def test_phi_values():
    r = 10
    assert abs(phi_r(r, f2(r)).value - mpmath.mpf("0.5")) < mpmath.mpf(10) ** -60
    for n in range(-6, 7):
        p = phi_r(r, xi(r, n))
        assert abs(p.value - (n + mpmath.mpf("0.5"))) < mpmath.mpf(10) ** -50
        assert p.radius < mpmath.mpf(10) ** -50


def test_phi_errors():
    r = 10
    with pytest.raises(NotSquareZero):
        phi_r(r, SymClass(r, 1, 1, 0))
    with pytest.raises(OnEigenRay):
        phi_r(r, spectral_data(r).v_alpha)


def test_real_power_shifts_phi():
    r = 12
    from seshpack.dynamics import phi_real

    coords = [float(c) for c in xi(r, 1).coords]
    moved = t_real_power(r, coords, mpmath.mpf("0.3"))
    assert abs(phi_real(r, moved) - phi_real(r, coords) - mpmath.mpf("0.3")) < 1e-40


@given(even_r, st.integers(min_value=-40, max_value=40))
def test_sequence_bidirectional_memo_consistent(r, n):
    a = sequences(r).q(n)
    fresh = type(sequences(r))(r)
    assert fresh.q(n) == a
