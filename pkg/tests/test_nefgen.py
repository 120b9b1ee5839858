import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seshpack.dynamics import curve_c, spectral_data, t_apply
from seshpack.errors import InvalidSetup, NotCertified, OddR, OutOfRangeE
from seshpack.lattice import FullClass, SymClass, canonical, f2
from seshpack.nefgen import (
    CertifiedNefClass, ReflectionSetup, anticanonical_r8, audit, certified_classes, e_range,
    effective_bound_check, find_certificate, nef_preserving_pullback, orbit, pullback, pushforward, reflect,
    reflect_fibre, reflect_roundup, same_orbit, v_alpha_pullback, xi_e_r, xi_e_r_outer,
)


def test_reflection_example():
    st_ = ReflectionSetup(10, 3, 1)
    c = reflect_fibre(st_, 2)
    assert c.cls == SymClass(10, 18, 10, -6)
    assert c.cls.primitive() == SymClass(10, 9, 5, -3)
    assert c.inner
    fib = FullClass.uniform(10, 0, 1, 0)
    assert reflect(st_, reflect(st_, fib)) == fib


def test_setup_validation():
    with pytest.raises(InvalidSetup, match="odd"):
        ReflectionSetup(9, 2, 1)
    with pytest.raises(InvalidSetup):
        ReflectionSetup(4, 2, 1)  # G0^2 = 0
    with pytest.raises(InvalidSetup):
        ReflectionSetup(5, 3, 1)  # r < |G.G|
    assert ReflectionSetup(10, 3, 1).genus == 0


def test_reflect_roundup():
    st_ = ReflectionSetup(10, 3, 1)
    g0 = st_.g0
    # integral ratio: same as reflect
    assert reflect_roundup(st_, g0) == reflect(st_, g0) == g0.scale(-1)
    # C.G0 = 3, G0^2 = -4: ceil(-3/2) = -1, so G0 is added
    c = FullClass(10, 0, 0, [-1, -1, -1] + [0] * 7)
    assert c.dot(g0) == 3 and g0.square() == -4
    assert reflect_roundup(st_, c) == c + g0


def test_xi_e_r():
    c = xi_e_r(2, 10)
    assert c.cls == SymClass(10, 8, 10, -4)
    assert c.cls.primitive() == SymClass(10, 4, 5, -2)
    assert c.mirrored().cls == SymClass(10, 10, 8, -4)
    with pytest.raises(OutOfRangeE):
        xi_e_r(1, 10)
    with pytest.raises(OutOfRangeE):
        xi_e_r(4, 10)
    with pytest.raises(OutOfRangeE):
        xi_e_r(3, 11)
    assert list(e_range(13)) == [2, 3]


def test_outer_identity():
    for r in range(10, 30, 2):
        assert xi_e_r_outer(r) == t_apply(r, f2(r), -3).scale(2)
        assert canonical(r).dot(xi_e_r_outer(r)) < 0 or r == 10
    with pytest.raises(OddR):
        xi_e_r_outer(11)


def test_orbit():
    base = CertifiedNefClass(SymClass(10, 4, 5, -2), "xi(2,10)/2")
    (c,) = orbit(base, 10, [1])
    assert c.cls == SymClass(10, 5, 9, -3)
    assert c.cls.square() == 0 and c.inner
    assert orbit(base, 10, [0])[0].cls == base.cls
    with pytest.raises(OddR):
        orbit(base, 11, [1])


def test_orbit_distinctness_r14():
    # primitive generators: K.xi(2,14)/2 = 6, K.xi(3,14) = 10, both T-invariant
    a, b = xi_e_r(2, 14).cls.primitive(), xi_e_r(3, 14).cls.primitive()
    K = canonical(14)
    assert (K.dot(a), K.dot(b)) == (6, 10)
    for n in (-2, -1, 1, 2):
        assert K.dot(t_apply(14, a, n)) == 6
    assert same_orbit(14, a, b, window=6) is None
    assert same_orbit(10, SymClass(10, 4, 5, -2), SymClass(10, 5, 9, -3)) is True


def test_pullback_examples():
    v = SymClass(10, 4, 5, -2)
    w = pullback(2, 1, v)
    assert w == SymClass(20, 8, 5, -2)
    assert pushforward(2, 1, w) == SymClass(10, 8, 10, -4)
    assert w.square() == 2 * v.square()
    assert pullback(1, 1, v) == v


def test_nef_preserving_pullback():
    p = v_alpha_pullback(2, 1, 10)
    assert p.cls.square() == 0 and p.inner
    assert canonical(10).dot(spectral_data(10).v_alpha) == 0
    q = nef_preserving_pullback(3, 1, anticanonical_r8())
    assert q.cls == SymClass(24, 6, 2, -1) and q.inner
    ident = nef_preserving_pullback(1, 1, anticanonical_r8())
    assert not ident.inner and ident.k_dot == 0
    with pytest.raises(NotCertified):
        nef_preserving_pullback(2, 1, SymClass(8, 2, 2, -1))


def test_effective_bound():
    mk = anticanonical_r8().cls
    assert effective_bound_check(8, mk, SymClass(8, 0, 8, -1))
    assert -8 * SymClass(8, 0, 8, -1).square() == SymClass(8, 0, 8, -1).dot(mk) ** 2
    assert effective_bound_check(8, mk, SymClass(8, 1, 0, 0))
    xi24 = SymClass(24, 6, 2, -1)
    for n in range(-4, 5):
        if n == 0:
            continue
        c = curve_c(8, n)
        # pull back C along psi_{3,1}: inequality preserved
        assert effective_bound_check(24, xi24, pullback(3, 1, c))


def test_certificates_audit():
    for r in (9, 10, 12, 16, 17, 20, 24):
        for c in certified_classes(r):
            assert c.cls.square() == 0 and c.inner
            assert audit(c)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([10, 12, 16, 20, 24, 30, 32]),
       st.fractions(min_value=F(1, 40), max_value=40, max_denominator=40))
def test_find_certificate_matches_enumeration(r, t):
    slopes = {(c.cls.d2 / c.cls.d1).to_fraction() for c in certified_classes(r)
              if c.cls.is_rational and c.cls.d1 != 0}
    hit = find_certificate(r, t)
    assert (hit is not None) == (t in slopes)
    if hit is not None:
        assert (hit.cls.d2 / hit.cls.d1).to_fraction() == t and hit.inner


def test_find_certificate_over_enumerated_slopes():
    for r in (16, 20, 30):
        for c in certified_classes(r):
            if c.cls.is_rational and c.cls.d1 != 0:
                t = (c.cls.d2 / c.cls.d1).to_fraction()
                assert find_certificate(r, t) is not None


def test_reflection_involutive_isometry_random():
    rng = random.Random(3)
    for _ in range(200):
        r = rng.randint(3, 30)
        g1, g2 = rng.randint(1, 4), rng.randint(1, 4)
        try:
            st_ = ReflectionSetup(r, g1, g2)
        except InvalidSetup:
            continue
        v = FullClass(r, rng.randint(-5, 5), rng.randint(-5, 5), [rng.randint(-3, 3) for _ in range(r)])
        assert reflect(st_, reflect(st_, v)) == v
        assert reflect(st_, v).square() == v.square()
