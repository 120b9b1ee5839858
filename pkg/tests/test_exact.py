import json
from fractions import Fraction as F

import mpmath
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from seshpack.errors import IncompatibleRadicands
from seshpack.exact import Surd, parse_rational, squarefree_split

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 12, 48, 80, 121])


@st.composite
def surds(draw, s=None):
    rad = draw(radicands) if s is None else s
    return Surd(draw(rationals), draw(rationals), rad)


def _sym(x: Surd):
    return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * \
        sympy.sqrt(x.radicand)


@given(st.integers(min_value=1, max_value=10**8))
def test_squarefree_split_matches_sympy(n):
    k, s = squarefree_split(n)
    assert k * k * s == n
    assert all(e == 1 for e in sympy.factorint(s).values())


def test_squarefree_split_large_prime_power():
    p = 1000003
    assert squarefree_split(p * p * 7) == (p, 7)


def test_canonical_form():
    x = Surd(1, 1, 48)  # 1 + 4 sqrt 3
    assert (x.a, x.b, x.radicand) == (1, 4, 3)
    assert Surd(0, 5, 49) == 35
    assert Surd(2, 0, 7).is_rational


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_field_ops_match_sympy(data):
    s = data.draw(radicands)
    x, y = data.draw(surds(s)), data.draw(surds(s))
    assert sympy.simplify(_sym(x + y) - (_sym(x) + _sym(y))) == 0
    assert sympy.simplify(_sym(x * y) - _sym(x) * _sym(y)) == 0
    assert sympy.simplify(_sym(x - y) - (_sym(x) - _sym(y))) == 0
    if y != 0:
        assert sympy.simplify(_sym(x / y) - _sym(x) / _sym(y)) == 0


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_sign_and_order_exact(data):
    s = data.draw(radicands)
    x, y = data.draw(surds(s)), data.draw(surds(s))
    ref = sympy.sign(sympy.nsimplify(_sym(x) - _sym(y)))
    assert (x - y).sign() == int(ref)
    assert (x < y) == (ref < 0)


@given(surds())
def test_floor_ceil(x):
    fl, cl = x.floor(), x.ceil()
    assert fl == sympy.floor(_sym(x)) and cl == sympy.ceiling(_sym(x))


@given(surds())
def test_json_roundtrip(x):
    assert Surd.from_json(json.dumps(x.to_json())) == x
    assert Surd.from_json(x.to_json()) == x


@given(surds())
def test_float_agrees(x):
    with mpmath.workprec(200):
        assert abs(x.to_mpf() - mpmath.mpf(str(float(x)))) < 1e-12 * (1 + abs(float(x)))


def test_incompatible_radicands():
    with pytest.raises(IncompatibleRadicands):
        Surd(0, 1, 2) + Surd(0, 1, 3)
    with pytest.raises(IncompatibleRadicands):
        Surd(0, 1, 2) < Surd(0, 1, 3)
    # rational operands combine with anything
    assert Surd(0, 1, 2) + 1 == Surd(1, 1, 2)


def test_sqrt_of_rational():
    assert Surd.sqrt(F(9, 4)) == F(3, 2)
    assert Surd.sqrt(F(1, 5)) * Surd.sqrt(F(1, 5)) == F(1, 5)
    with pytest.raises(ValueError):
        Surd.sqrt(F(-1))


def test_hash_consistent_with_eq():
    assert hash(Surd(3, 0, 0)) == hash(Surd(3, 0, 5))
    assert Surd(3, 0, 0) == Surd(3, 0, 5)


def test_parse_rational():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational(" -7 ") == -7
    for bad in ("1.5", "1e3", "x"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_str_form():
    assert str(Surd(1, -1, 3)) == "1 - sqrt(3)"
    assert str(Surd(F(1, 2), F(3, 4), 5)) == "1/2 + 3/4*sqrt(5)"
