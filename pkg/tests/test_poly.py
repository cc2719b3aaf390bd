from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from squarish.poly import Poly, poly_divide_exact, poly_gcd

coeffs = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=5), max_size=5)


@given(coeffs, coeffs, coeffs)
def test_ring_axioms(a, b, c):
    a, b, c = Poly(a), Poly(b), Poly(c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@given(coeffs, coeffs)
def test_exact_division_roundtrip(a, b):
    a, b = Poly(a), Poly(b)
    if b.is_zero():
        return
    assert poly_divide_exact(a * b, b) == a


def test_division_with_remainder_raises():
    with pytest.raises(Exception):
        poly_divide_exact(Poly([1, 0, 0, 1]), Poly([-1, 1]))


def test_from_roots_and_degree():
    p = Poly.from_roots([2, -2, 0])
    assert p == Poly([0, -4, 0, 1])
    assert p.degree == 3 and p.lead == 1


def test_gcd_is_monic_common_factor():
    a = Poly.from_roots([1, 2, 3])
    b = Poly.from_roots([2, 3, Fraction(1, 2)])
    assert poly_gcd(a, b) == Poly.from_roots([2, 3])
