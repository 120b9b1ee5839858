from fractions import Fraction as F

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from seshpack.dynamics import curve_c, sequences
from seshpack.errors import EvenR, InnerBundle, OddR
from seshpack.exact import Surd
from seshpack.lattice import AmpleBundle, SymClass, canonical
from seshpack.oracle import nef_duality_epsilon_auto
from seshpack.seshadri import (
    SMALL_R_TABLES, curve_ratio, dtg_lower, epsilon, epsilon_r8_closed, eta, find_n_even, find_n_phi, find_n_r8,
    is_inner, odd_c_curves, odd_gap_top, s_of_r,
)


def _sym(x: Surd):
    a, b = x.a, x.b
    return sympy.Rational(a.numerator, a.denominator) + sympy.Rational(b.numerator, b.denominator) * \
        sympy.sqrt(x.radicand)


pos = st.fractions(min_value=F(1, 20), max_value=60, max_denominator=20)
r_any = st.integers(min_value=1, max_value=80)


def test_examples():
    v = epsilon(10, (2, 7))
    assert v.is_exact and v.value == F(5, 3)
    assert v.witness == SymClass(10, 10, 40, -9)
    assert epsilon(5, (1, 1)).value == F(3, 5)
    assert epsilon(8, (4, 9)).value == 3
    assert epsilon(8, (1, 4)).value == 1
    assert epsilon(7, (1, 1)).value == F(8, 15)
    assert epsilon(9, (1, 5)).value == 1


def test_n_finders():
    assert find_n_even(10, (1, 7)) == 1
    assert find_n_even(10, (2, 7)) == 2
    assert find_n_even(10, (7, 2)) == -2
    assert find_n_phi(10, (7, 2)) == -2
    with pytest.raises(InnerBundle):
        find_n_even(20, (1, 1))
    with pytest.raises(OddR):
        find_n_even(11, (1, 9))


def test_mirror_index_gives_same_eps():
    # eps(7, 2) computed by C_{-2}, the mirror of C_2
    assert epsilon(10, (7, 2)).value == epsilon(10, (2, 7)).value
    c = curve_c(10, -2)
    assert c == curve_c(10, 2).swap()


def test_r8_closed_form_and_boundaries():
    for n in range(1, 12):
        for L in (AmpleBundle(3, 7), AmpleBundle(1, F((n + 1) ** 2, n * n) + F(1, 50))):
            c = curve_c(8, n)
            assert epsilon_r8_closed(n, L) == curve_ratio(c, L)
        b = AmpleBundle(1, F((n + 1) ** 2, n * n))
        assert epsilon(8, b).value == eta(8, b)
    assert find_n_r8(AmpleBundle(1, 4)) == 1
    with pytest.raises(InnerBundle):
        find_n_r8(AmpleBundle(2, 2))
    assert epsilon(8, (3, 3)).value == F(3, 2)


def test_s_of_r():
    s = s_of_r(9)
    assert s.radicand == 109
    with pytest.raises(EvenR):
        s_of_r(10)
    for r in range(9, 120, 2):
        s = _sym(s_of_r(r))
        top = (sympy.sqrt(r) - 1) ** 2 / 2
        alpha = ((r - 4) + sympy.sqrt(r * (r - 8))) / 4
        assert top < s
        # the upper bound s(r) < alpha_r holds from r = 11; alpha_9 = 2 < s(9)
        assert (s < alpha) == (r >= 11)
        assert _sym(odd_gap_top(r)) == sympy.Min(s, alpha)


def test_r9_between_alpha_and_s_is_exact():
    L = AmpleBundle(10, 21)  # slope 2.1 in (alpha_9, s(9))
    assert not is_inner(9, L)
    v = epsilon(9, L)
    assert v.is_exact and v.value == F(8 * 10 + 2 * 21, 18)


def test_odd_curves_are_minus_one_curves():
    # C1, C4 are sums of r disjoint (-1)-curves; C2, C3 are single (-1)-curves
    for r in range(9, 40, 2):
        K = canonical(r)
        c1, c2, c3, c4 = odd_c_curves(r)
        for c in (c1, c4):
            assert c.square() == -r and K.dot(c) == -r
        for c in (c2, c3):
            assert c.square() == -1 and K.dot(c) == -1


@settings(max_examples=150, deadline=None)
@given(r_any, pos, pos)
def test_eps_below_eta_and_lower_below_upper(r, e1, e2):
    v = epsilon(r, (e1, e2))
    h = eta(r, (e1, e2))
    if v.is_exact:
        assert _sym(v.value) <= _sym(h)
        assert v.value > 0
    else:
        assert v.upper == h
        assert 0 < _sym(v.lower) <= _sym(v.upper)


@settings(max_examples=150, deadline=None)
@given(r_any, pos, pos, st.integers(min_value=2, max_value=7))
def test_homogeneous_and_symmetric(r, e1, e2, k):
    v = epsilon(r, (e1, e2))
    w = epsilon(r, (k * e1, k * e2))
    m = epsilon(r, (e2, e1))
    if v.is_exact:
        assert w.value == k * v.value
        assert m.value == v.value
    else:
        assert w.lower == k * v.lower and w.upper == k * v.upper
        assert (m.lower, m.upper) == (v.lower, v.upper)


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=4, max_value=40).map(lambda k: 2 * k), pos, pos)
def test_even_outer_matches_duality(r, e1, e2):
    L = AmpleBundle(e1, e2)
    assume(not (r >= 10 and is_inner(r, L)) and not (r == 8 and e1 == e2))
    assert epsilon(r, L).value == nef_duality_epsilon_auto(r, L)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=5, max_value=40).map(lambda k: 2 * k), pos, pos)
def test_inner_even_dtg_bound(r, e1, e2):
    L = AmpleBundle(e1, e2)
    assume(is_inner(r, L))
    v = epsilon(r, L)
    if not v.is_exact:
        assert v.lower == dtg_lower(r, L)


def test_certified_inner_exact():
    # xi(2, 10) = (8, 10, -4) lies on slope 10/8
    v = epsilon(10, (4, 5))
    assert v.is_exact and v.value == eta(10, (4, 5))
    assert v.witness.is_proportional(SymClass(10, 8, 10, -4))


def test_small_r_breakpoints_continuous():
    for r, table in SMALL_R_TABLES.items():
        curves = [SymClass(r, *c) for _, c in table]
        for (bp, _), a, b in zip(table, curves, curves[1:]):
            L = AmpleBundle(1, bp)
            assert curve_ratio(a, L) == curve_ratio(b, L)


def test_odd_gap_lower_bound_valid():
    # between (sqrt r - 1)^2/2 and s(r): monotonicity bound against the slope-s(r) bundle
    for r in (11, 13, 25, 49, 99):
        top = (sympy.sqrt(r) - 1) ** 2 / 2
        s_r = _sym(s_of_r(r))
        t = F(int(sympy.floor((top + s_r) / 2 * 10**6)), 10**6)
        assert top < t < s_r
        L = AmpleBundle(1, t)
        v = epsilon(r, L)
        assert not v.is_exact
        assert 0 < _sym(v.lower) <= _sym(v.upper)
        # eps(L) >= eps(e2/s(r), e2), where the C3 formula is exact
        ref = ((r - 1) * t / s_r + 2 * t) / (2 * r)
        assert sympy.simplify(_sym(v.lower) - ref) == 0
