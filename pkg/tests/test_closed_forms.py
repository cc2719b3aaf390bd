from fractions import Fraction

import mpmath
import pytest

from squarish.closed_forms import (CertificateError, FormulaId, encoded_highdim_charpoly,
                                   eq6_4_polynomial, eval_formula, path_like_spectra)
from squarish.families import FamilyId, build_family
from squarish.linalg import charpoly
from squarish.poly import Poly, product
from squarish.verify import check_formula, exact_counterpart, highdim_check, two_power_square_form

F = FamilyId


@pytest.mark.parametrize("fid,n,want", [("EQ2_5", 2, 1), ("EQ2_5", 3, 4), ("EQ4_7", 1, 2),
                                        ("EQ6_3", 1, 32), ("EQ5_4", 1, 2)])
def test_small_values(fid, n, want):
    value, cert = eval_formula(fid, n)
    assert value == want
    assert cert.line(value).startswith(f"VALUE {want} DIST 2^-")


def test_certificate_gate():
    # every accepted value sits far closer than 2^-64 to its integer
    for n in range(2, 8):
        _, cert = eval_formula("EQ2_5", n)
        assert cert.distance_log2 < -64


@pytest.mark.parametrize("fid", list(FormulaId))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_every_formula_matches_its_counterpart(fid, n):
    chk = check_formula(fid, n)
    assert chk.passed, chk.line()


def test_formula_names():
    assert FormulaId.parse("2.5") is FormulaId.EQ2_5
    assert FormulaId.parse("eq2_2") is FormulaId.EQ2_2_PATH_SPECTRUM
    with pytest.raises(KeyError):
        FormulaId.parse("EQ9_9")


def test_path_like_spectra():
    assert abs(path_like_spectra("P", 1)[0].value()) < 2 ** -200
    vals = sorted(float(e.value()) for e in path_like_spectra("P2", 3))
    assert vals == pytest.approx([-2 * 2 ** 0.5, 0, 2 * 2 ** 0.5])
    assert float(path_like_spectra("R", 1)[0].value()) == pytest.approx(1)


@pytest.mark.parametrize("n", range(1, 9))
def test_grid_spectrum_sums(n):
    """Each sum 2cos(j pi/(n+1)) + 2cos(k pi/(n+1)) is a root of charpoly(G_n)."""
    p = charpoly(build_family(F.GRID, n).adjacency())
    with mpmath.workprec(300):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                lam = 2 * mpmath.cos(j * mpmath.pi / (n + 1)) + 2 * mpmath.cos(k * mpmath.pi / (n + 1))
                val = mpmath.polyval([mpmath.mpf(c) for c in reversed(p.coeffs)], lam)
                assert abs(val) < mpmath.mpf(2) ** -128


@pytest.mark.parametrize("d,n", [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2)])
def test_highdim(d, n):
    ok, got, enc = highdim_check(d, n)
    assert ok and got == enc


def test_highdim_examples():
    assert encoded_highdim_charpoly(3, 1) == Poly([0, 1])
    want = product([Poly([0, 1])] * 2 + [Poly.from_roots([4, -4])] + [Poly.from_roots([0, 2, -2])] * 4)
    assert encoded_highdim_charpoly(4, 2) == want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pillowcase_product_degree_anomaly(n):
    """The displayed pillowcase product has one factor of x too many."""
    p, _ = eq6_4_polynomial(n)
    cp = charpoly(build_family(F.PILLOWCASE, n).adjacency())
    assert p.degree == cp.degree + 1
    assert p == cp * Poly([0, 1])


def test_two_power_square_form():
    assert two_power_square_form(196, 2) == (2, 7)
    assert two_power_square_form(2, 1) == (1, 1)
    assert two_power_square_form(200, 2) is None
    assert two_power_square_form(4 * 36, 2) is None  # 6 is even


def test_oracle_counterpart_agrees():
    assert exact_counterpart("EQ4_8", 2, oracle=True) == exact_counterpart("EQ4_8", 2)
