"""Trigonometric product formulas evaluated in high precision and rounded
with a certificate.

Each formula is the product of its factors taken in the stated index order.
A value is accepted only if, after multiplying by the formula's declared
power-of-two denominator, it lies within 2^-64 * max(1, |value|) of an
integer, and the rounded integer is unchanged when the precision is doubled.
The working precision is raised automatically so that it exceeds the bit
size of the value by a safety margin; a certificate failure is an error,
never a silent rounding.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import mpmath

from .poly import Poly

DEFAULT_PRECISION = 256
MAX_PRECISION = 1 << 15
MARGIN_BITS = 96


class CertificateError(ArithmeticError):
    pass


class FormulaId(enum.Enum):
    EQ2_2_PATH_SPECTRUM = "EQ2_2_PATH_SPECTRUM"
    EQ2_3_GRID_SPECTRUM = "EQ2_3_GRID_SPECTRUM"
    EQ2_4 = "EQ2_4"
    EQ2_5 = "EQ2_5"
    EQ3_22 = "EQ3_22"
    EQ3_24 = "EQ3_24"
    EQ3_25 = "EQ3_25"
    EQ3_26 = "EQ3_26"
    EQ3_28 = "EQ3_28"
    EQ3_29 = "EQ3_29"
    EQ4_1 = "EQ4_1"
    EQ4_2 = "EQ4_2"
    EQ4_3 = "EQ4_3"
    EQ4_4 = "EQ4_4"
    EQ4_7 = "EQ4_7"
    EQ4_8 = "EQ4_8"
    EQ4_9 = "EQ4_9"
    EQ4_10 = "EQ4_10"
    EQ4_11 = "EQ4_11"
    EQ4_12 = "EQ4_12"
    EQ5_1 = "EQ5_1"
    EQ5_2 = "EQ5_2"
    EQ5_3 = "EQ5_3"
    EQ5_4 = "EQ5_4"
    EQ5_5 = "EQ5_5"
    EQ5_6 = "EQ5_6"
    EQ5_7 = "EQ5_7"
    EQ6_3 = "EQ6_3"

    @classmethod
    def parse(cls, name: str) -> "FormulaId":
        key = name.upper().replace(".", "_")
        if not key.startswith("EQ"):
            key = "EQ" + key
        for f in cls:
            if f.value == key or f.value.startswith(key + "_"):
                return f
        raise KeyError(f"unknown formula {name!r}")


@dataclass(frozen=True)
class RoundingCertificate:
    bits: int
    distance_log2: float  # log2 of the distance to the accepted integer
    denominator: int = 1

    def line(self, value) -> str:
        v = Fraction(value)
        vs = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        k = "inf" if self.distance_log2 == -math.inf else str(int(math.floor(-self.distance_log2)))
        return f"VALUE {vs} DIST 2^-{k} BITS {self.bits}"


# ---------------------------------------------------------------------------
# factor helpers (evaluated inside an mpmath precision context)

def _cos(num: int, den: int):
    return mpmath.cos(num * mpmath.pi / den)


def _prod(factors) -> "mpmath.mpf":
    acc = mpmath.mpf(1)
    for f in factors:
        acc *= f
    return acc


def _pairs(lo: int, hi: int, strict: bool) -> Iterator[Tuple[int, int]]:
    for j in range(lo, hi + 1):
        for k in range(j + 1 if strict else j, hi + 1):
            yield j, k


# Scalar formulas: n -> (integer-valued product P, declared denominator D); the
# formula's value is P / D

def _eq2_5(n):
    return _prod(4 - 2 * _cos(j, n) - 2 * _cos(k, n) for j, k in _pairs(1, n - 1, True)), 1


def _eq3_22(n):
    return _prod(4 - 4 * _cos(j, 2 * n) * _cos(k, 2 * n)
                 for j, k in _pairs(1, 2 * n - 1, True) if j + k <= 2 * n - 1), 1


def _eq3_26(n):
    return _prod(4 - 4 * _cos(j, 2 * n + 1) * _cos(k, 2 * n + 1)
                 for j, k in _pairs(1, 2 * n, True) if j + k <= 2 * n), 1


def _eq4_1(n):
    return _prod(4 - 2 * _cos(j, n + 1) - 2 * _cos(k, n + 1) for j, k in _pairs(1, n, False)), 2 ** n


def _eq4_2(n):
    return _prod(4 * _cos(j, 2 * n + 1) ** 2 + 4 * _cos(k, 2 * n + 1) ** 2
                 for j, k in _pairs(1, n, True)), 1


def _eq4_3(n):
    return (_prod(4 - 2 * _cos(j, n + 1) - 2 * _cos(k, n + 1)
                  for j, k in _pairs(1, n, False) if (j + k) % 2 == 0),
            2 ** (2 * ((n + 1) // 2)))


def _eq4_4(n):
    return (_prod(4 - 2 * _cos(j, n + 1) - 2 * _cos(k, n + 1)
                  for j, k in _pairs(1, n, True) if (j + k) % 2 == 1),
            2 ** (n // 2))


def _eq4_7(n):
    return 2 ** (2 * n * n) * _prod(_cos(j, 2 * n + 1) ** 2 + _cos(k, 2 * n + 1) ** 2
                                    for j in range(1, n + 1) for k in range(1, n + 1)), 1


def _eq4_8(n):
    return 2 * n * _eq3_22(n)[0], 1


def _eq4_9(n):
    m = 2 * n
    return (_prod(4 - 2 * _cos(j, m) - 2 * _cos(k, m)
                  for j, k in _pairs(1, m - 1, False) if (j + k) % 2 == 0), 2 ** (2 * n))


def _eq4_10(n):
    return _prod(4 - 2 * _cos(j, n) - 2 * _cos(k, n) for j, k in _pairs(1, n - 1, False)), 2 ** (n - 1)


def _eq4_11(n):
    m = 2 * n - 1
    return (_prod(4 - 2 * _cos(j, m) - 2 * _cos(k, m)
                  for j, k in _pairs(1, m - 1, False) if (j + k) % 2 == 0), 2 ** (2 * n - 2))


def _eq4_12(n):
    m = 2 * n - 1
    val = 2 ** (n - 1) * _prod(_cos(j, m) for j in range(1, n))
    val *= _prod(4 * _cos(j, m) ** 2 + 4 * _cos(k, m) ** 2 for j, k in _pairs(1, n - 1, True))
    return val, 1


def _eq5_1(n):
    m = 2 * n + 1
    val = _prod(4 - 4 * _cos(j, m) for j in range(1, 2 * n + 1))
    val *= _prod(4 - 2 * _cos(2 * j, m) - 2 * _cos(2 * k, m) for j, k in _pairs(1, n, True))
    return val, 2 ** (3 * n)


def _eq5_2(n):
    return (_prod(4 - 4 * _cos(j, 2 * n) * _cos(k, 2 * n)
                  for j, k in _pairs(1, 2 * n - 1, True)
                  if j + k <= 2 * n - 1 and (j + k) % 2 == 1), 2 ** (n - 1))


def _eq5_3(n):
    m = 2 * n + 1
    return _prod(4 - 2 * _cos(2 * j + 1, m) - 2 * _cos(k, m)
                 for j in range(0, n) for k in range(0, 2 * n + 1)), 1


def _eq5_4(n):
    m = 2 * n + 1
    return _prod(4 * _cos(j, m) ** 2 + 4 * _cos(k, m) ** 2
                 for j in range(1, n + 1) for k in range(1, n + 1)), 1


def _eq5_5(n):
    val = 2 ** (n - 2 * (n // 2)) * _prod((4 - 2 * _cos(j, n + 1) - 2 * _cos(k, n + 1)) ** 2
                                          for j, k in _pairs(1, n, True) if (j + k) % 2 == 1)
    return val, 1


def _eq5_6(n):
    val = 2 * _prod(4 - 2 * _cos(j, n) - 2 * _cos(k, n) for j, k in _pairs(1, n - 1, False))
    val *= _prod(4 - 4 * _cos(j, 2 * n) * _cos(k, 2 * n)
                 for j, k in _pairs(1, 2 * n - 1, True)
                 if j + k <= 2 * n - 1 and (j + k) % 2 == 1)
    return val, 1


def _eq5_7(n):
    m = 2 * n + 1
    val = _prod(4 - 4 * _cos(j, m) for j in range(1, 2 * n + 1))
    val *= _prod((4 - 2 * _cos(2 * j, m) - 2 * _cos(2 * k, m))
                 * (4 * _cos(j, m) ** 2 + 4 * _cos(k, m) ** 2)
                 for j, k in _pairs(1, n, True))
    return val, 2 ** n


def _eq6_3(n):
    m = 2 * n
    val = _prod((4 - 4 * _cos(j, m)) ** 2 for j in range(1, m))
    val *= _prod(4 - 4 * _cos(j, m) * _cos(k, m) for j in range(1, m) for k in range(1, m))
    return val / (2 * n * n), 1


# Polynomial formulas: n -> list of roots (mpf), each factor is (x - root)

def _roots_eq2_2(n):
    return [2 * _cos(k, n + 1) for k in range(1, n + 1)]


def _roots_eq2_3(n):
    return [2 * _cos(j, n + 1) + 2 * _cos(k, n + 1)
            for j in range(1, n + 1) for k in range(1, n + 1)]


def _roots_eq2_4(n):
    # the index range is read as 1 <= j < k <= n
    return [2 * _cos(j, n + 1) + 2 * _cos(k, n + 1) for j, k in _pairs(1, n, True)]


def _roots_eq3_24(n):
    m = 2 * n + 2
    return ([mpmath.mpf(0)] + [4 * _cos(j, m) ** 2 for j in range(1, n + 1)]
            + [4 * _cos(j, m) * _cos(k, m) for j, k in _pairs(1, 2 * n + 1, True)])


def _roots_eq3_25(n):
    m = 2 * n + 2
    return [4 * _cos(j, m) * _cos(k, m) for j, k in _pairs(1, 2 * n + 1, True) if j + k <= 2 * n + 1]


def _roots_eq3_28(n):
    m = 2 * n + 1
    return ([4 * _cos(j, m) ** 2 for j in range(1, n + 1)]
            + [4 * _cos(j, m) * _cos(k, m) for j, k in _pairs(1, 2 * n, True)])


def _roots_eq3_29(n):
    m = 2 * n + 1
    return [4 * _cos(j, m) * _cos(k, m) for j, k in _pairs(1, 2 * n, True) if j + k <= 2 * n]


def _roots_eq6_4(n):
    """Roots of the displayed pillowcase product, including its extra x."""
    m = 2 * n
    roots = [mpmath.mpf(4), mpmath.mpf(-4)]
    for j in range(1, m):
        roots += [4 * _cos(j, m)] * 2
    roots += [4 * _cos(j, m) * _cos(k, m) for j in range(1, m) for k in range(1, m)]
    return roots


SCALAR: Dict[FormulaId, Callable] = {
    FormulaId.EQ2_5: _eq2_5, FormulaId.EQ3_22: _eq3_22, FormulaId.EQ3_26: _eq3_26,
    FormulaId.EQ4_1: _eq4_1, FormulaId.EQ4_2: _eq4_2, FormulaId.EQ4_3: _eq4_3,
    FormulaId.EQ4_4: _eq4_4, FormulaId.EQ4_7: _eq4_7, FormulaId.EQ4_8: _eq4_8,
    FormulaId.EQ4_9: _eq4_9, FormulaId.EQ4_10: _eq4_10, FormulaId.EQ4_11: _eq4_11,
    FormulaId.EQ4_12: _eq4_12, FormulaId.EQ5_1: _eq5_1, FormulaId.EQ5_2: _eq5_2,
    FormulaId.EQ5_3: _eq5_3, FormulaId.EQ5_4: _eq5_4, FormulaId.EQ5_5: _eq5_5,
    FormulaId.EQ5_6: _eq5_6, FormulaId.EQ5_7: _eq5_7, FormulaId.EQ6_3: _eq6_3,
}

POLYNOMIAL: Dict[FormulaId, Callable] = {
    FormulaId.EQ2_2_PATH_SPECTRUM: _roots_eq2_2, FormulaId.EQ2_3_GRID_SPECTRUM: _roots_eq2_3,
    FormulaId.EQ2_4: _roots_eq2_4, FormulaId.EQ3_24: _roots_eq3_24,
    FormulaId.EQ3_25: _roots_eq3_25, FormulaId.EQ3_28: _roots_eq3_28,
    FormulaId.EQ3_29: _roots_eq3_29,
}

# ---------------------------------------------------------------------------
# certified evaluation

def _round_at(fn, n, bits):
    with mpmath.workprec(bits):
        scaled, den = fn(n)  # the value is scaled / den
        nearest = int(mpmath.nint(scaled))
        dist = abs(scaled - nearest)
        size = abs(scaled)
    return nearest, den, dist, size


def _accept(dist, size) -> bool:
    return dist < mpmath.ldexp(max(mpmath.mpf(1), size), -64)


def _log2(x) -> float:
    return -math.inf if x == 0 else float(mpmath.log(x, 2))


def eval_formula(fid, n: int, precision: int = DEFAULT_PRECISION):
    """Exact value of a scalar formula together with its rounding certificate."""
    fid = FormulaId.parse(fid) if isinstance(fid, str) else fid
    if fid in POLYNOMIAL:
        return eval_polynomial_formula(fid, n, precision)
    if n < 1:
        raise ValueError("n must be >= 1")
    fn = SCALAR[fid]
    bits = precision
    # raise the precision until it comfortably exceeds the size of the value
    with mpmath.workprec(64):
        rough, den = fn(n)
        need = max(0, int(_log2(abs(rough) + 1))) + MARGIN_BITS
    while bits < need:
        bits *= 2
    while bits <= MAX_PRECISION:
        a, den, dist, size = _round_at(fn, n, bits)
        if _accept(dist, size):
            b, _, dist2, size2 = _round_at(fn, n, 2 * bits)
            if a == b and _accept(dist2, size2):
                cert = RoundingCertificate(bits, _log2(dist), den)
                return _norm_fraction(Fraction(a, den)), cert
        bits *= 2
    raise CertificateError(f"{fid.value} at n={n}: rounding could not be certified")


def _norm_fraction(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def _expand_roots(roots) -> list:
    coeffs = [mpmath.mpf(1)]  # ascending
    for r in roots:
        nxt = [mpmath.mpf(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    return coeffs


def _poly_at(rootfn, n, bits):
    with mpmath.workprec(bits):
        coeffs = _expand_roots(rootfn(n))
        out = []
        worst = mpmath.mpf(0)
        ok = True
        for c in coeffs:
            k = int(mpmath.nint(c))
            d = abs(c - k)
            if not _accept(d, abs(c)):
                ok = False
            worst = max(worst, d)
            out.append(k)
    return out, ok, worst


def eval_polynomial_formula(fid, n: int, precision: int = DEFAULT_PRECISION):
    fid = FormulaId.parse(fid) if isinstance(fid, str) else fid
    rootfn = POLYNOMIAL[fid] if fid in POLYNOMIAL else fid
    if n < 1:
        raise ValueError("n must be >= 1")
    with mpmath.workprec(64):
        size = _prod(1 + abs(r) for r in rootfn(n))
        need = int(_log2(size)) + MARGIN_BITS
    bits = precision
    while bits < need:
        bits *= 2
    while bits <= MAX_PRECISION:
        a, ok, worst = _poly_at(rootfn, n, bits)
        if ok:
            b, ok2, _ = _poly_at(rootfn, n, 2 * bits)
            if ok2 and a == b:
                return Poly(a), RoundingCertificate(bits, _log2(worst), 1)
        bits *= 2
    raise CertificateError(f"polynomial formula at n={n}: coefficients could not be certified")


def eq6_4_polynomial(n: int, precision: int = DEFAULT_PRECISION):
    """The displayed pillowcase product, certified-rounded.  Its degree is
    4n^2 + 1, one more than the number of vertices of the pillowcase."""
    return eval_polynomial_formula(_roots_eq6_4, n, precision)


# ---------------------------------------------------------------------------
# spectra of path-like graphs

@dataclass(frozen=True)
class CosineEigenvalue:
    """scale * cos(num*pi/den)^power + shift."""
    scale: int
    num: int
    den: int
    power: int = 1
    shift: int = 0

    def value(self, bits: int = 256):
        with mpmath.workprec(bits):
            return self.shift + self.scale * _cos(self.num, self.den) ** self.power

    def __str__(self) -> str:
        p = "" if self.power == 1 else f"^{self.power}"
        s = f"{self.scale}cos({self.num}pi/{self.den}){p}"
        return s if not self.shift else f"{self.shift}+{s}"


def path_like_spectra(kind: str, n: int) -> List[CosineEigenvalue]:
    kind = kind.upper()
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "P":
        return [CosineEigenvalue(2, k, n + 1) for k in range(1, n + 1)]
    if kind == "P2":
        return [CosineEigenvalue(4, k, n + 1) for k in range(1, n + 1)]
    if kind in ("Q", "QP"):
        s = 4 if kind == "Q" else -4
        return [CosineEigenvalue(s, j, 2 * n + 2, 2) for j in range(1, n + 1)]
    if kind in ("R", "RP"):
        s = 4 if kind == "R" else -4
        return [CosineEigenvalue(s, j, 2 * n + 1, 2) for j in range(1, n + 1)]
    raise ValueError(f"unknown path-like spectrum {kind!r}")


# ---------------------------------------------------------------------------
# displayed factorizations of higher-dimensional grid charpolys

def _highdim_table():
    T = {}
    T[(3, 1)] = lambda x: x
    T[(3, 2)] = lambda x: (x - 3) * (x + 3) * ((x - 1) * (x + 1)) ** 3
    T[(3, 3)] = lambda x: x * (x**2 - 18) * (x**2 * (x**2 - 8) * (x**2 - 2) ** 2) ** 3
    T[(3, 4)] = lambda x: ((x**2 - 3 * x - 9) * (x**2 + 3 * x - 9)
                           * ((x**2 - 3 * x + 1) * (x**2 + 3 * x + 1) * (x**2 - x - 11)
                              * (x**2 + x - 11) * (x**2 - x - 1) ** 3 * (x**2 + x - 1) ** 3) ** 3)
    T[(3, 5)] = lambda x: (x * (x - 3) * (x + 3) * (x**2 - 27)
                           * ((x - 2) * (x + 2) * (x**2 - 12) * (x**2 - 4 * x + 1)
                              * (x**2 + 4 * x + 1) * (x**2 - 2 * x - 11)
                              * (x**2 + 2 * x - 11) * (x**2 - 2 * x - 2) ** 2
                              * (x**2 + 2 * x - 2) ** 2 * (x - 1) ** 4 * (x + 1) ** 4
                              * (x**2 - 3) ** 4) ** 3)
    T[(4, 1)] = lambda x: x
    T[(4, 2)] = lambda x: x**2 * (x - 4) * (x + 4) * (x * (x - 2) * (x + 2)) ** 4
    T[(4, 3)] = lambda x: (x**3 * (x**2 - 32) * (x**2 - 8) ** 2
                           * (x**4 * (x**2 - 18) * (x**2 - 8) ** 2 * (x**2 - 2) ** 4) ** 4)
    T[(4, 4)] = lambda x: (x**4 * (x - 2) ** 2 * (x + 2) ** 2 * (x**2 - 4 * x - 16)
                           * (x**2 + 4 * x - 16) * (x**2 - 20) ** 2
                           * (x**8 * (x - 2) * (x + 2) * (x**2 - 20) * (x**2 - 4 * x - 1)
                              * (x**2 + 4 * x - 1) * (x**2 - 2 * x - 19) * (x**2 + 2 * x - 19)
                              * (x**2 - 2 * x - 4) ** 4 * (x**2 + 2 * x - 4) ** 4
                              * (x - 1) ** 6 * (x + 1) ** 6 * (x**2 - 5) ** 6) ** 4)
    T[(4, 5)] = lambda x: (x**5 * (x - 4) * (x + 4) * (x**2 - 48) * (x - 2) ** 2 * (x + 2) ** 2
                           * (x**2 - 12) ** 2 * (x**2 - 4 * x - 8) ** 2 * (x**2 + 4 * x - 8) ** 2
                           * (x**14 * (x - 3) * (x + 3) * (x**2 - 6 * x + 6) * (x**2 + 6 * x + 6)
                              * (x**2 - 2 * x - 26) * (x**2 + 2 * x - 26) * (x**2 - 27)
                              * (x**2 - 4 * x - 8) * (x**2 + 4 * x - 8)
                              * (x**2 - 4 * x + 1) ** 3 * (x**2 + 4 * x + 1) ** 3
                              * (x**2 - 2 * x - 11) ** 3 * (x**2 + 2 * x - 11) ** 3
                              * (x - 2) ** 5 * (x + 2) ** 5 * (x**2 - 12) ** 5
                              * (x**2 - 2 * x - 2) ** 9 * (x**2 + 2 * x - 2) ** 9
                              * (x - 1) ** 10 * (x + 1) ** 10 * (x**2 - 3) ** 10) ** 4)
    return T


_HIGHDIM = _highdim_table()


def encoded_highdim_charpoly(d: int, n: int) -> Poly:
    """Expansion of the displayed factorization of P(G_n^(d); x)."""
    try:
        f = _HIGHDIM[(d, n)]
    except KeyError:
        raise ValueError(f"(d, n) = ({d}, {n}) is not in the encoded table") from None
    p = f(Poly.x())
    if p.degree != n ** d:
        raise ValueError(f"encoded factorization for ({d},{n}) has degree {p.degree}, "
                         f"expected {n ** d}")
    return p


# ---------------------------------------------------------------------------
# exact counterparts (which graph quantity each scalar formula equals)

COUNTERPART_TEXT = {
    FormulaId.EQ2_5: "tree_count(QUARTERED n)",
    FormulaId.EQ3_22: "tree_count(HALF_MIXED n)",
    FormulaId.EQ3_26: "tree_count(HALF_ODD n)",
    FormulaId.EQ4_1: "M(ZIGZAG_A n)",
    FormulaId.EQ4_2: "M(ZIGZAG_B n)",
    FormulaId.EQ4_3: "M(ZIGZAG_C n)",
    FormulaId.EQ4_4: "M(ZIGZAG_D n)",
    FormulaId.EQ4_7: "M(GRID 2n)",
    FormulaId.EQ4_8: "h-invariant trees of AZTEC n",
    FormulaId.EQ4_9: "h-invariant trees of ODD_DIAMOND n",
    FormulaId.EQ4_10: "<h,v>-invariant trees of ODD_DIAMOND n",
    FormulaId.EQ4_11: "h-invariant trees of MIXED_DIAMOND n",
    FormulaId.EQ4_12: "<h,v>-invariant trees of MIXED_DIAMOND n",
    FormulaId.EQ5_1: "M(ZIGZAG_A_TILDE n)",
    FormulaId.EQ5_2: "M(ZIGZAG_B_TILDE n)",
    FormulaId.EQ5_3: "h-invariant matchings of HOLED_SQUARE 2n",
    FormulaId.EQ5_4: "<h,v>-invariant matchings of HOLED_SQUARE 2n",
    FormulaId.EQ5_5: "r2-invariant matchings of HOLED_SQUARE n",
    FormulaId.EQ5_6: "r-invariant matchings of HOLED_SQUARE 2n-1",
    FormulaId.EQ5_7: "r-invariant matchings of HOLED_SQUARE 2n",
    FormulaId.EQ6_3: "tree_count(PILLOWCASE n)",
    FormulaId.EQ2_2_PATH_SPECTRUM: "charpoly(PATH_Q n, q=1)",
    FormulaId.EQ2_3_GRID_SPECTRUM: "charpoly(GRID n)",
    FormulaId.EQ2_4: "charpoly(QUARTERED n-1)",
    FormulaId.EQ3_24: "charpoly(ODD_DIAMOND n)",
    FormulaId.EQ3_25: "charpoly(HALF_ODD n-1)",
    FormulaId.EQ3_28: "charpoly(MIXED_DIAMOND n)",
    FormulaId.EQ3_29: "charpoly(HALF_MIXED n-1)",
}
