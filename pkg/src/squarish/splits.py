"""Concrete applications of the matching factorization split.

Each application builds a symmetric graph, splits it along its axis and
records what the two halves are expected to count.  The identity
M(G) = 2^k M(G+) M(G-) is checked by counting all three graphs; the halves
are checked against independently computed counts of the named pieces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .families import FamilyId, build_family
from .graph import LatticeGraph, LatticePoint
from .linalg import tree_count
from .matchings import AxisSplit, MatchingError, count_matchings, factorization_split, split_by_sides
from .transforms import (is_lattice_isomorphic, point_map, quotient_by_group, symmetry_map,
                         temperley_refinement)

F = FamilyId


def _m(fam, n) -> Fraction:
    if n <= 0:
        return Fraction(1)
    return count_matchings(build_family(fam, n)).value


def _t(fam, n) -> Fraction:
    return Fraction(tree_count(build_family(fam, n)))


@dataclass
class SplitApplication:
    name: str
    n: int
    graph: LatticeGraph
    split: AxisSplit
    expected_k: int
    expected_halves: Tuple[Fraction, Fraction]
    # families one half should be lattice-isomorphic to (checked when given)
    iso_family: Optional[Tuple[FamilyId, int]] = None

    def check(self) -> "SplitCheck":
        total = count_matchings(self.graph).value
        cp = count_matchings(self.split.g_plus).value
        cm = count_matchings(self.split.g_minus).value
        predicted = Fraction(2) ** self.split.k * cp * cm
        halves_ok = sorted((cp, cm)) == sorted(self.expected_halves)
        iso_ok = True
        if self.iso_family is not None:
            target = build_family(*self.iso_family)
            iso_ok = any(is_lattice_isomorphic(h, target)
                         for h in (self.split.g_plus, self.split.g_minus))
        return SplitCheck(self.name, self.n, total, predicted, (cp, cm), self.split.k,
                          total == predicted, halves_ok and self.split.k == self.expected_k,
                          iso_ok)


@dataclass(frozen=True)
class SplitCheck:
    name: str
    n: int
    total: Fraction
    predicted: Fraction
    halves: Tuple[Fraction, Fraction]
    k: int
    identity_ok: bool
    halves_ok: bool
    iso_ok: bool

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.halves_ok and self.iso_ok

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"SPLIT {self.name} {self.n} {status} M={self.total} "
                f"k={self.k} halves={self.halves[0]},{self.halves[1]}")


# ---------------------------------------------------------------------------
# builders

def grid_diagonal(n: int) -> SplitApplication:
    """G_2n across its diagonal: both halves are ZIGZAG_B n."""
    g = build_family(F.GRID, 2 * n)
    b = _m(F.ZIGZAG_B, n)
    return SplitApplication("grid_diagonal", n, g, factorization_split(g, "diag"), n, (b, b),
                            (F.ZIGZAG_B, n))


def grid_minus_corner(n: int) -> SplitApplication:
    """G_{2n+1} minus its top right vertex, across the diagonal: ZIGZAG_A n and
    the refined quartered diamond of order n+1 minus a vertex."""
    g = build_family(F.GRID, 2 * n + 1)
    top = max(p.coords[0] for p in g.points)
    g = g.delete_vertices([g.vertex_at((top, top))])
    halves = (_m(F.ZIGZAG_A, n), _t(F.QUARTERED, n + 1))
    return SplitApplication("grid_minus_corner", n, g, factorization_split(g, "diag"), n, halves,
                            (F.ZIGZAG_A, n))


def zigzag_a(n: int) -> SplitApplication:
    """ZIGZAG_A n across its antidiagonal: ZIGZAG_D n and ZIGZAG_C n."""
    g = build_family(F.ZIGZAG_A, n)
    halves = (_m(F.ZIGZAG_D, n), _m(F.ZIGZAG_C, n))
    return SplitApplication("zigzag_a", n, g, factorization_split(g, "antidiag"), (n + 1) // 2,
                            halves, (F.ZIGZAG_D, n))


def zigzag_c_even(n: int) -> SplitApplication:
    """ZIGZAG_C 2n across its vertical axis: ZIGZAG_B n and ZIGZAG_A_TILDE n."""
    g = build_family(F.ZIGZAG_C, 2 * n)
    halves = (_m(F.ZIGZAG_B, n), _m(F.ZIGZAG_A_TILDE, n))
    return SplitApplication("zigzag_c_even", n, g, factorization_split(g, "v"), n, halves,
                            (F.ZIGZAG_B, n))


def quartered_refined(n: int) -> SplitApplication:
    """Refined QUARTERED n+1 minus its right-angle corner, across the symmetry
    axis: ZIGZAG_D n and a refined half diamond minus a vertex."""
    q = build_family(F.QUARTERED, n + 1)
    t = temperley_refinement(q)
    f = point_map(t, "antidiag")
    corner = min((v for v, p in enumerate(t.points) if tuple(f(p.coords)) == p.coords),
                 key=lambda v: t.points[v].coords[0])
    g = t.delete_vertices([corner])
    other = _t(F.HALF_ODD, n // 2) if n % 2 == 0 else _t(F.HALF_MIXED, (n + 1) // 2)
    halves = (_m(F.ZIGZAG_D, n), other)
    return SplitApplication("quartered_refined", n, g, factorization_split(g, "antidiag"),
                            n // 2, halves, None)


def holed_r2_quotient(n: int) -> SplitApplication:
    """Orbit graph of HOLED_SQUARE n under the half-turn, drawn as the part
    under the main diagonal with diagonal pairs glued; split across the
    perpendicular diagonal.  Both halves count like ZIGZAG_D n."""
    h = build_family(F.HOLED_SQUARE, n)
    r2 = symmetry_map(h, "r2")
    reps = [v for v, p in enumerate(h.points)
            if p.coords[1] < p.coords[0] or (p.coords[0] == p.coords[1] and p.coords[0] > 0)]
    q = quotient_by_group(h, [r2], reps, label=f"{h.label}/r2")
    side, pos, mirror = [], {}, []
    qi = q.index()
    for v, p in enumerate(q.points):
        x, y = p.coords
        if x == y:  # glued diagonal pair, on the axis
            side.append(0)
            pos[v] = x
            mirror.append(v)
            continue
        if x + y == 0:
            side.append(0)
            pos[v] = -x
        else:
            side.append(1 if x + y > 0 else -1)
        mirror.append(qi[(-y, -x)])
    d = _m(F.ZIGZAG_D, n)
    return SplitApplication("holed_r2_quotient", n, q, split_by_sides(q, side, pos, mirror), n,
                            (d, d), (F.ZIGZAG_D, n))


def holed_r_quotient(n: int) -> SplitApplication:
    """Orbit graph of HOLED_SQUARE n under the quarter turn, drawn as the
    bottom wedge with its two bounding diagonals glued; split across the
    vertical axis."""
    h = build_family(F.HOLED_SQUARE, n)
    r = symmetry_map(h, "r")
    reps = [v for v, p in enumerate(h.points)
            if p.coords[1] <= -abs(p.coords[0])
            and not (p.coords[0] < 0 and p.coords[1] == p.coords[0])]
    q = quotient_by_group(h, [r], reps, label=f"{h.label}/r")
    side, pos, mirror = [], {}, []
    qi = q.index()
    for v, p in enumerate(q.points):
        x, y = p.coords
        if x == -y:  # glued pair on the two diagonals
            side.append(0)
            pos[v] = x
            mirror.append(v)
            continue
        if x == 0:
            side.append(0)
            pos[v] = y
        else:
            side.append(1 if x > 0 else -1)
        mirror.append(qi[(-x, y)])
    if n % 2:
        halves = (_m(F.ZIGZAG_A, (n - 1) // 2), _m(F.ZIGZAG_B_TILDE, (n + 1) // 2))
    else:
        halves = (_m(F.ZIGZAG_B, n // 2), _m(F.ZIGZAG_A_TILDE, n // 2))
    return SplitApplication("holed_r_quotient", n, q, split_by_sides(q, side, pos, mirror), n,
                            halves, None)


def half_mixed_pendant(n: int) -> SplitApplication:
    """Refined HALF_MIXED n plus a new vertex joined to the two bottom
    vertices nearest the axis; split across the vertical axis into
    ZIGZAG_B_TILDE n and a refined quartered diamond minus a vertex."""
    t = temperley_refinement(build_family(F.HALF_MIXED, n))
    pts = list(t.points) + [LatticePoint((0, -2))]
    v = len(pts) - 1
    arcs = dict(t.arcs)
    for u in (t.vertex_at((2, 0)), t.vertex_at((-2, 0))):
        arcs[(u, v)] = 1
        arcs[(v, u)] = 1
    g = LatticeGraph(pts, arcs, False, [False] * len(pts), f"{t.label}+v")
    gi = g.index()
    side = [0 if p.coords[0] == 0 else (1 if p.coords[0] < 0 else -1) for p in g.points]
    pos = {i: p.coords[1] for i, p in enumerate(g.points) if side[i] == 0}
    mirror = [gi[(-p.coords[0], p.coords[1])] for p in g.points]
    halves = (_m(F.ZIGZAG_B_TILDE, n), _t(F.QUARTERED, n))
    return SplitApplication("half_mixed_pendant", n, g, split_by_sides(g, side, pos, mirror), n,
                            halves, None)


APPLICATIONS: Dict[str, Callable[[int], SplitApplication]] = {
    "grid_diagonal": grid_diagonal,
    "grid_minus_corner": grid_minus_corner,
    "zigzag_a": zigzag_a,
    "zigzag_c_even": zigzag_c_even,
    "quartered_refined": quartered_refined,
    "holed_r2_quotient": holed_r2_quotient,
    "holed_r_quotient": holed_r_quotient,
    "half_mixed_pendant": half_mixed_pendant,
}


def run_applications(max_n: int = 4, names=None) -> List[SplitCheck]:
    out = []
    for name in names or APPLICATIONS:
        for n in range(1, max_n + 1):
            out.append(APPLICATIONS[name](n).check())
    return out


# plain symmetric instances (family, n, axis kind); the axis must pass
# through vertices, so grids and Aztec diamonds only use their diagonals
SYMMETRIC_INSTANCES = [
    (F.GRID, n, k) for n in (2, 4, 6, 8) for k in ("diag", "antidiag")
] + [
    (F.AZTEC, n, k) for n in range(1, 6) for k in ("diag", "antidiag")
] + [
    (F.HOLED_SQUARE, n, k) for n in range(1, 4) for k in ("h", "v", "diag", "antidiag")
]


def check_symmetric_instance(family, n: int, kind: str) -> SplitCheck:
    g = build_family(family, n)
    s = factorization_split(g, kind)
    total = count_matchings(g).value
    cp = count_matchings(s.g_plus).value
    cm = count_matchings(s.g_minus).value
    pred = Fraction(2) ** s.k * cp * cm
    name = f"{FamilyId(family).value}/{kind}"
    return SplitCheck(name, n, total, pred, (cp, cm), s.k, total == pred, True, True)
