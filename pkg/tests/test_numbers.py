from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski_no.numbers import (
    QuadraticIrrational,
    decimal_string,
    encode,
    format_rational,
    parse_rational,
    rational_sqrt,
    sqrt_exact,
    squarefree_split,
)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


def test_wire_format():
    assert format_rational(Fraction(6, -4)) == "-3/2"
    assert format_rational(3) == "3/1"
    assert parse_rational(" -3/2 ") == Fraction(-3, 2)
    for bad in ("1.5", "1e3", "", "x"):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)


def test_squarefree_and_sqrt():
    assert squarefree_split(72) == (6, 2)
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert sqrt_exact(Fraction(8)) == QuadraticIrrational(0, 2, 2)


def _sym(v, d):
    if isinstance(v, QuadraticIrrational):
        return sympy.Rational(v.a.numerator, v.a.denominator) + sympy.Rational(v.b.numerator, v.b.denominator) * sympy.sqrt(v.d)
    v = Fraction(v)
    return sympy.Rational(v.numerator, v.denominator)


@settings(max_examples=40, deadline=None)
@given(rationals, rationals, rationals, rationals, st.sampled_from([2, 3, 5, 19, 39]))
def test_quadratic_field_matches_sympy(a, b, c, e, d):
    x, y = QuadraticIrrational(a, b, d), QuadraticIrrational(c, e, d)
    sx, sy = _sym(x, d), _sym(y, d)
    assert sympy.simplify(_sym(x + y, d) - (sx + sy)) == 0
    assert sympy.simplify(_sym(x - y, d) - (sx - sy)) == 0
    assert sympy.simplify(_sym(x * y, d) - (sx * sy)) == 0
    if y != 0:
        assert sympy.simplify(_sym(x / y, d) - (sx / sy)) == 0
    diff = sympy.nsimplify(sx - sy)
    assert (x < y) == bool(diff < 0)
    assert (x == y) == bool(diff == 0)


def test_encode_and_decimal():
    q = QuadraticIrrational(2, 3, 19)
    assert encode(q) == {"a": "2/1", "b": "3/1", "d": "19"}
    assert encode(Fraction(1, 3)) == "1/3"
    assert decimal_string(Fraction(-1, 3), 3) == "-0.334"
    assert decimal_string(q, 2) == "15.07"
    assert QuadraticIrrational(5, 0, 7) == 5
