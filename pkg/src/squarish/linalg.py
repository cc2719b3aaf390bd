"""Exact linear algebra over Q.

Determinants use fraction-free Bareiss elimination on an integer matrix
obtained by clearing denominators.  Characteristic polynomials are recovered
by evaluating det(kI - A) at dim+1 integer points and interpolating, then
spot-checked against trace identities.  The Smith form of xI - A over Q[x]
serves as a similarity certificate.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Iterable, List, Sequence

import numpy as np

from .poly import Poly, _norm

SMITH_CAP = 40


class LinalgError(ValueError):
    pass


class BigRationalMatrix:
    """Dense matrix of exact rationals (ints where integral)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        rows = [tuple(_norm(x) for x in r) for r in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise LinalgError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.entries = tuple(rows)

    @classmethod
    def zeros(cls, r: int, c: int) -> "BigRationalMatrix":
        return cls([[0] * c for _ in range(r)], cols=c)

    @classmethod
    def identity(cls, n: int) -> "BigRationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def block_diag(cls, blocks: Sequence["BigRationalMatrix"]) -> "BigRationalMatrix":
        n = sum(b.rows for b in blocks)
        out = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.rows):
                out[off + i][off:off + b.cols] = b.entries[i]
            off += b.rows
        return cls(out, cols=n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> List[list]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "BigRationalMatrix":
        return BigRationalMatrix(zip(*self.entries), cols=self.rows)

    def __matmul__(self, other: "BigRationalMatrix") -> "BigRationalMatrix":
        if self.cols != other.rows:
            raise LinalgError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), 0) for c in cols])
        return BigRationalMatrix(out, cols=other.cols)

    def __add__(self, other):
        return BigRationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols)

    def __sub__(self, other):
        return BigRationalMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols)

    def scale(self, c) -> "BigRationalMatrix":
        return BigRationalMatrix([[c * a for a in r] for r in self.entries], cols=self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"BigRationalMatrix({self.rows}x{self.cols})"

    def trace(self):
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))), 0)

    def denominator_lcm(self) -> int:
        d = 1
        for r in self.entries:
            for a in r:
                if isinstance(a, Fraction):
                    d = lcm(d, a.denominator)
        return d

    def inverse(self) -> "BigRationalMatrix":
        """Exact inverse by Gauss-Jordan elimination over the rationals."""
        _require_square(self)
        n = self.rows
        aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
               for i, r in enumerate(self.entries)]
        for c in range(n):
            piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
            if piv is None:
                raise LinalgError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv_p = 1 / aug[c][c]
            row = [x * inv_p for x in aug[c]]
            aug[c] = row
            for r in range(n):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], row)]
        return BigRationalMatrix([r[n:] for r in aug], cols=n)


def as_matrix(m) -> BigRationalMatrix:
    return m if isinstance(m, BigRationalMatrix) else BigRationalMatrix(m)


def _require_square(m: BigRationalMatrix):
    if not m.is_square():
        raise LinalgError(f"matrix is not square: {m.rows}x{m.cols}")


def _integer_array(m: BigRationalMatrix):
    """Return (object array B, D) with B = D*m integral."""
    d = m.denominator_lcm()
    b = np.empty((m.rows, m.cols), dtype=object)
    for i, r in enumerate(m.entries):
        for j, a in enumerate(r):
            b[i, j] = int(a * d) if d != 1 else a
    return b, d


def bareiss_det_int(b: np.ndarray) -> int:
    """Determinant of an integer object array (destroys its argument)."""
    n = b.shape[0]
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if b[k, k] == 0:
            nz = np.flatnonzero(b[k + 1:, k] != 0)
            if nz.size == 0:
                return 0
            p = k + 1 + int(nz[0])
            b[[k, p]] = b[[p, k]]
            sign = -sign
        piv = b[k, k]
        sub = b[k + 1:, k + 1:] * piv - np.outer(b[k + 1:, k], b[k, k + 1:])
        if prev != 1:
            sub //= prev
        b[k + 1:, k + 1:] = sub
        prev = piv
    return sign * int(b[n - 1, n - 1])


def determinant(m) -> Fraction | int:
    """Exact determinant by Bareiss elimination after clearing denominators."""
    m = as_matrix(m)
    _require_square(m)
    b, d = _integer_array(m)
    det = bareiss_det_int(b)
    return _norm(Fraction(det, d ** m.rows)) if d != 1 else det


def _newton_to_monomial(values: Sequence[int]) -> List[Fraction]:
    """Interpolate p with p(k) = values[k], k = 0..n, return ascending coefficients."""
    n = len(values) - 1
    diffs = list(values)
    newton = [diffs[0]]
    for j in range(1, n + 1):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        newton.append(diffs[0])
    # p(x) = sum_j newton[j] * C(x, j); build falling factorials incrementally
    coeffs = [Fraction(0)] * (n + 1)
    falling = [1]  # coefficients of x(x-1)...(x-j+1)
    fact = 1
    for j in range(n + 1):
        if j > 0:
            fact *= j
            nxt = [0] * (len(falling) + 1)
            for i, c in enumerate(falling):
                nxt[i + 1] += c
                nxt[i] -= (j - 1) * c
            falling = nxt
        if newton[j]:
            f = Fraction(newton[j], fact)
            for i, c in enumerate(falling):
                if c:
                    coeffs[i] += f * c
    return coeffs


def _int_charpoly(b: np.ndarray) -> List[int]:
    n = b.shape[0]
    vals = []
    eye = np.zeros((n, n), dtype=object)
    for i in range(n):
        eye[i, i] = 1
    for k in range(n + 1):
        vals.append(bareiss_det_int(eye * k - b))
    coeffs = _newton_to_monomial(vals)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise LinalgError("interpolation produced a non-integral coefficient")
        out.append(c.numerator)
    return out


def charpoly(m, check: bool = True) -> Poly:
    """det(xI - m) as an exact polynomial."""
    m = as_matrix(m)
    _require_square(m)
    n = m.rows
    b, d = _integer_array(m)
    q = _int_charpoly(b)
    if d == 1:
        p = Poly(q)
    else:
        p = Poly(Fraction(c) * Fraction(d) ** (k - n) for k, c in enumerate(q))
    if check:
        _check_charpoly(m, p)
    return p


def _check_charpoly(m: BigRationalMatrix, p: Poly) -> None:
    n = m.rows
    if p.degree != n or p.lead != 1:
        raise LinalgError(f"charpoly has degree {p.degree}, expected monic degree {n}")
    if n == 0:
        return
    tr = m.trace()
    if p[n - 1] != -tr:
        raise LinalgError("charpoly trace identity failed")
    if n >= 2:
        tr2 = sum((m.entries[i][j] * m.entries[j][i]
                   for i in range(n) for j in range(n)
                   if m.entries[i][j] and m.entries[j][i]), 0)
        if p[n - 2] != Fraction(tr * tr - tr2, 2):
            raise LinalgError("charpoly second trace identity failed")


def laplacian_reduced(weights: dict, n: int, drop: int = 0) -> BigRationalMatrix:
    """Reduced Laplacian (row/column ``drop`` deleted) from an undirected weight map."""
    lap = [[0] * n for _ in range(n)]
    for (u, v), w in weights.items():
        if u == v:
            continue
        lap[u][v] -= w
        lap[u][u] += w
    keep = [i for i in range(n) if i != drop]
    return BigRationalMatrix([[lap[i][j] for j in keep] for i in keep], cols=n - 1)


def tree_count(g) -> int:
    """Weighted spanning-tree count by the Matrix-Tree theorem (0 if disconnected)."""
    if g.directed:
        raise LinalgError("tree_count requires an undirected graph")
    n = g.num_vertices
    if n == 0:
        return 0
    if n == 1:
        return 1
    if not g.is_connected():
        return 0
    return determinant(laplacian_reduced(g.arcs, n))


# ---------------------------------------------------------------------------
# Smith form of xI - A over Q[x]

class PolySmithForm:
    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[Poly]):
        self.factors = tuple(factors)

    def nontrivial(self) -> tuple:
        return tuple(f for f in self.factors if f.degree > 0)

    def product(self) -> Poly:
        out = Poly([1])
        for f in self.factors:
            out = out * f
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolySmithForm):
            return NotImplemented
        return self.nontrivial() == other.nontrivial()

    def __hash__(self):
        return hash(self.nontrivial())

    def __repr__(self) -> str:
        return "PolySmithForm([" + ", ".join(str(f) for f in self.nontrivial()) + "])"


def smith_form_xI_minus_A(m, cap: int = SMITH_CAP) -> PolySmithForm:
    """Invariant factors of xI - m over Q[x], monic, each dividing the next."""
    m = as_matrix(m)
    _require_square(m)
    n = m.rows
    if n > cap:
        raise LinalgError(f"dimension {n} exceeds Smith-form cap {cap}; use charpoly check")
    x = Poly.x()
    a = [[(x if i == j else Poly()) - m.entries[i][j] for j in range(n)] for i in range(n)]
    diag: List[Poly] = []
    for k in range(n):
        while True:
            piv = None
            for i in range(k, n):
                for j in range(k, n):
                    e = a[i][j]
                    if not e.is_zero() and (piv is None or e.degree < piv[0]):
                        piv = (e.degree, i, j)
                        if e.degree == 0:
                            break
                if piv is not None and piv[0] == 0:
                    break
            if piv is None:
                diag.extend([Poly()] * (n - k))
                return _finish_smith(diag)
            _, pi, pj = piv
            a[k], a[pi] = a[pi], a[k]
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            p = a[k][k]
            dirty = False
            for i in range(k + 1, n):
                if a[i][k].is_zero():
                    continue
                q, r = divmod(a[i][k], p)
                if not r.is_zero():
                    dirty = True
                rk = a[k]
                ri = a[i]
                for j in range(k, n):
                    if not rk[j].is_zero():
                        ri[j] = ri[j] - q * rk[j]
            for j in range(k + 1, n):
                if a[k][j].is_zero():
                    continue
                q, r = divmod(a[k][j], p)
                if not r.is_zero():
                    dirty = True
                for i in range(k, n):
                    if not a[i][k].is_zero():
                        a[i][j] = a[i][j] - q * a[i][k]
            if dirty:
                continue
            # row and column k are clear; enforce divisibility of the rest
            bad = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if not a[i][j].is_zero() and not (a[i][j] % p).is_zero():
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for j in range(k, n):
                a[k][j] = a[k][j] + a[bad][j]
        diag.append(a[k][k].monic())
    return _finish_smith(diag)


def _finish_smith(diag: List[Poly]) -> PolySmithForm:
    out = [d.monic() for d in diag]
    for i in range(len(out) - 1):
        if out[i].is_zero():
            continue
        if not out[i + 1].is_zero() and not (out[i + 1] % out[i]).is_zero():
            raise LinalgError("Smith form divisibility chain violated")
    return PolySmithForm(out)
