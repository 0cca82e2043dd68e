"""Exact-endpoint interval arithmetic."""

from fractions import Fraction

import pytest

from staircase.errors import PreconditionError
from staircase.intervals import Enclosure, decimal_str, enclosure_strings, eval_poly


def test_basic_arithmetic_contains_products():
    a = Enclosure(Fraction(1, 3), Fraction(1, 2))
    b = Enclosure(Fraction(-2), Fraction(3))
    s = a + b
    assert s.lo == Fraction(1, 3) - 2 and s.hi == Fraction(1, 2) + 3
    p = a * b
    for x in (Fraction(1, 3), Fraction(1, 2)):
        for y in (Fraction(-2), Fraction(3)):
            assert p.lo <= x * y <= p.hi


def test_reciprocal_and_division():
    a = Enclosure(Fraction(2), Fraction(4))
    r = a.reciprocal()
    assert r.lo == Fraction(1, 4) and r.hi == Fraction(1, 2)
    q = Enclosure(Fraction(1), Fraction(1)) / a
    assert q == r
    with pytest.raises(ZeroDivisionError):
        Enclosure(Fraction(-1), Fraction(1)).reciprocal()


def test_pow_int_monotone_on_nonnegative():
    a = Enclosure(Fraction(1, 2), Fraction(3, 2))
    c = a.pow_int(3)
    assert c.lo == Fraction(1, 8) and c.hi == Fraction(27, 8)


def test_intersect_requires_overlap():
    a = Enclosure(Fraction(0), Fraction(2))
    b = Enclosure(Fraction(1), Fraction(3))
    c = a.intersect(b)
    assert (c.lo, c.hi) == (Fraction(1), Fraction(2))


def test_eval_poly_encloses_true_range():
    # p(x) = x^2 - x - 1 over [1.5, 1.7] contains p(phi) = 0
    coeffs = [Fraction(-1), Fraction(-1), Fraction(1)]
    box = eval_poly(coeffs, Enclosure(Fraction(3, 2), Fraction(17, 10)))
    assert box.lo <= 0 <= box.hi


def test_decimal_str_rounding_modes():
    x = Fraction(1, 3)
    assert decimal_str(x, 4, "floor") == "0.3333"
    assert decimal_str(x, 4, "ceil") == "0.3334"
    assert decimal_str(Fraction(-1, 3), 4, "floor") == "-0.3334"
    assert decimal_str(Fraction(5, 2), 0, "nearest") == "3"


def test_enclosure_strings_bracket_value():
    e = Enclosure(Fraction(161803, 100000), Fraction(161804, 100000))
    lo, hi = enclosure_strings(e, 5)
    assert lo == "1.61803" and hi == "1.61804"
    assert Fraction(lo) <= e.lo <= e.hi <= Fraction(hi)
