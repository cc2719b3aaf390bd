from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, strategies as st

from squarish.families import FamilyId, build_family
from squarish.linalg import (BigRationalMatrix, LinalgError, charpoly, determinant,
                             smith_form_xI_minus_A, tree_count)
from squarish.poly import Poly, product

F = FamilyId


def _mat(rows):
    return BigRationalMatrix([[Fraction(x) for x in r] for r in rows])


def _leibniz(rows):
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


def test_small_determinants():
    assert determinant(_mat([[1 if i == j else 0 for j in range(5)] for i in range(5)])) == 1
    assert determinant(_mat([[0, 2], [2, 0]])) == -4


small_rational = st.fractions(min_value=-9, max_value=9, max_denominator=4)


@given(st.lists(st.lists(small_rational, min_size=6, max_size=6), min_size=6, max_size=6))
def test_determinant_matches_leibniz(rows):
    assert determinant(_mat(rows)) == _leibniz(rows)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=5, max_size=5))
def test_charpoly_matches_sympy(rows):
    x = sympy.Symbol("x")
    want = sympy.Matrix(rows).charpoly(x).all_coeffs()[::-1]
    assert charpoly(_mat(rows)).coeffs == tuple(int(c) for c in want)


def test_charpoly_examples():
    assert charpoly(build_family(F.GRID, 2).adjacency()) == Poly([0, 0, -4, 0, 1])
    assert charpoly(build_family(F.PATH_Q, 3, q=2).adjacency()) == Poly([0, -8, 0, 1])
    cube = build_family(F.GRID_D, 2, d=3)
    want = product([Poly.from_roots([3, -3])] + [Poly.from_roots([1, -1])] * 3)
    assert charpoly(cube.adjacency()) == want


def test_inverse_roundtrip():
    m = _mat([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    inv = m.inverse()
    prod = m @ inv if hasattr(m, "__matmul__") else m.mul(inv)
    assert all(prod[i, j] == (1 if i == j else 0) for i in range(3) for j in range(3))
    with pytest.raises(LinalgError):
        _mat([[1, 2], [2, 4]]).inverse()


def test_tree_counts():
    assert tree_count(build_family(F.AZTEC, 1)) == 4
    assert tree_count(build_family(F.QUARTERED, 3)) == 4
    assert tree_count(build_family(F.PILLOWCASE, 1)) == 32


def test_smith_forms():
    s = smith_form_xI_minus_A(_mat([[1, 0], [0, 1]]))
    assert s.nontrivial() == (Poly([-1, 1]), Poly([-1, 1]))
    assert smith_form_xI_minus_A(_mat([[1, 1], [0, 1]])) != s


def test_smith_form_grid_3_matches_blocks():
    from squarish.graph import disjoint_union
    g = build_family(F.GRID, 3)
    blocks = disjoint_union([build_family(F.QUARTERED, 2), build_family(F.QUARTERED, 2),
                             build_family(F.PATH_Q, 3, q=2)])
    assert smith_form_xI_minus_A(g.adjacency()) == smith_form_xI_minus_A(blocks.adjacency())


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=4, max_size=4))
def test_smith_product_is_charpoly(rows):
    m = _mat(rows)
    assert smith_form_xI_minus_A(m).product() == charpoly(m)
