"""Builders for the lattice graph families.

All planar families live in the plane with unit axis-parallel steps.  Stored
coordinates are twice the real ones, so half-integer lattices use odd stored
values.  Vertices are ordered by (y descending, x ascending) unless noted.

Conventions worth knowing when reading matrices:

* ``AZTEC`` AD_n: half-integer points with |x|+|y| <= n.
* ``QUARTERED`` QAD_n: the part of AD_n with x >= 1/2, y <= -1/2.  In matrix
  coordinates i = 1/2 - y, j = x + 1/2 the top-left vertex is (1,1) and the
  hypotenuse is i + j = n + 1.
* ``ODD_DIAMOND`` OD_n: integer points with |x|+|y| <= n (the black squares of
  the (2n+1)x(2n+1) board, rotated by 45 degrees and rescaled).
* ``MIXED_DIAMOND`` MD_n: points with x in Z+1/2, y in Z, |x|+|y| <= n-1/2.
* ``HALF_ODD`` / ``HALF_MIXED``: the parts of OD_n / MD_n with y >= 0.
* ``HOLED_SQUARE`` H_n: integer square [-n,n]^2 minus the origin.
* ``PILLOWCASE`` AP_n lives in 3D: the two copies of AD_n sit at z = +1 and
  z = -1 and their common convex hull at z = 0.  Vertex order is (z desc, y
  desc, x asc), so the top copy's interior comes first.
* Path-like families are laid out along the x axis.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Set, Tuple

from .graph import GraphError, LatticeGraph, LatticePoint, position_key, unit_step_graph


class FamilyId(enum.Enum):
    GRID = "GRID"
    GRID_D = "GRID_D"
    AZTEC = "AZTEC"
    QUARTERED = "QUARTERED"
    ODD_DIAMOND = "ODD_DIAMOND"
    MIXED_DIAMOND = "MIXED_DIAMOND"
    HALF_ODD = "HALF_ODD"
    HALF_MIXED = "HALF_MIXED"
    HOLED_SQUARE = "HOLED_SQUARE"
    ZIGZAG_A = "ZIGZAG_A"
    ZIGZAG_B = "ZIGZAG_B"
    ZIGZAG_C = "ZIGZAG_C"
    ZIGZAG_D = "ZIGZAG_D"
    ZIGZAG_A_TILDE = "ZIGZAG_A_TILDE"
    ZIGZAG_B_TILDE = "ZIGZAG_B_TILDE"
    PATH_Q = "PATH_Q"
    LOOP_Q = "LOOP_Q"
    LOOP_QP = "LOOP_QP"
    LOOP_R = "LOOP_R"
    LOOP_RP = "LOOP_RP"
    BLOCK_S = "BLOCK_S"
    BLOCK_SP = "BLOCK_SP"
    PILLOWCASE = "PILLOWCASE"
    ODD_PILLOWCASE = "ODD_PILLOWCASE"
    MARKED_QAD = "MARKED_QAD"
    MARKED_HMD = "MARKED_HMD"
    MARKED_HOD = "MARKED_HOD"
    MARKED_AD = "MARKED_AD"

    @classmethod
    def parse(cls, name: str) -> "FamilyId":
        try:
            return cls[name.upper()]
        except KeyError:
            raise GraphError(f"unknown family {name!r}") from None


PATH_FAMILIES = {FamilyId.PATH_Q, FamilyId.LOOP_Q, FamilyId.LOOP_QP, FamilyId.LOOP_R,
                 FamilyId.LOOP_RP, FamilyId.BLOCK_S, FamilyId.BLOCK_SP}


@dataclass(frozen=True)
class FamilySpec:
    family: FamilyId
    n: int
    q: Optional[Fraction] = None
    d: Optional[int] = None

    def label(self) -> str:
        extra = ""
        if self.q is not None:
            extra += f",q={self.q}"
        if self.d is not None:
            extra += f",d={self.d}"
        return f"{self.family.value}({self.n}{extra})"


# ---------------------------------------------------------------------------
# point sets (stored coordinates)

def grid_points(n: int):
    return [(2 * x, 2 * y) for x in range(n) for y in range(n)]


def aztec_points(n: int):
    r = range(-2 * n + 1, 2 * n, 2)
    return [(x, y) for x in r for y in r if abs(x) + abs(y) <= 2 * n]


def quartered_points(n: int):
    return [(x, y) for (x, y) in aztec_points(n) if x >= 1 and y <= -1]


def odd_diamond_points(n: int):
    r = range(-2 * n, 2 * n + 1, 2)
    return [(x, y) for x in r for y in r if abs(x) + abs(y) <= 2 * n]


def mixed_diamond_points(n: int):
    if n <= 0:
        return []
    return [(x, y) for x in range(-2 * n + 1, 2 * n, 2) for y in range(-2 * n, 2 * n + 1, 2)
            if abs(x) + abs(y) <= 2 * n - 1]


def holed_square_points(n: int):
    r = range(-2 * n, 2 * n + 1, 2)
    return [(x, y) for x in r for y in r if (x, y) != (0, 0)]


def zigzag_points(which: str, n: int):
    """Integer (real) points of the zig-zag regions, before doubling."""
    pts = []
    if n <= 0:
        return pts
    if which == "A":
        # on or above the staircase through (1,0): columns 2k, 2k+1 start at height 2k
        for x in range(2 * n):
            lo = 0 if x == 0 else 2 * (x // 2)
            pts += [(x, y) for y in range(lo, 2 * n)]
    elif which == "B":
        for x in range(2 * n):
            lo = 2 * ((x + 1) // 2)
            pts += [(x, y) for y in range(lo, 2 * n)]
    elif which == "C":
        for x in range(-n + 1, n):
            hi = min(1 + 2 * ((x + n - 1) // 2), 1 + 2 * ((n - 1 - x) // 2))
            pts += [(x, y) for y in range(0, hi + 1)]
    elif which == "D":
        for x in range(-n, n):
            hi = min(2 * ((x + n) // 2), 1 + 2 * ((n - 1 - x) // 2))
            pts += [(x, y) for y in range(0, hi + 1)]
    else:
        raise GraphError(f"unknown zig-zag region {which!r}")
    return pts


# ---------------------------------------------------------------------------
# helpers

def _double(points: Iterable[Tuple[int, ...]]):
    return [tuple(2 * c for c in p) for p in points]


def mark_directed(g: LatticeGraph, marked: Set[int], label: str = "",
                  marked_marked_factor=1) -> LatticeGraph:
    """Directed variant: arcs from a marked to an unmarked vertex get twice the
    weight; arcs between marked vertices are scaled by ``marked_marked_factor``."""
    arcs = {}
    for (u, v), w in g.arcs.items():
        if u in marked and v not in marked:
            w = 2 * w
        elif u in marked and v in marked:
            w = marked_marked_factor * w
        arcs[(u, v)] = w
    return LatticeGraph(g.points, arcs, True, [v in marked for v in range(g.num_vertices)],
                        label)


def _path_graph(n: int, weight, loops: Dict[int, object], label: str,
                extra_arcs: Optional[Dict[Tuple[int, int], object]] = None,
                directed: bool = False) -> LatticeGraph:
    pts = [LatticePoint((2 * i, 0)) for i in range(n)]
    arcs = {}
    for i in range(n - 1):
        arcs[(i, i + 1)] = weight
        arcs[(i + 1, i)] = weight
    for i, w in loops.items():
        arcs[(i, i)] = w
    if extra_arcs:
        arcs.update(extra_arcs)
    return LatticeGraph(pts, arcs, directed, None, label)


# ---------------------------------------------------------------------------
# public builders

def build_path_family(family, n: int, q=None) -> LatticeGraph:
    family = FamilyId.parse(family) if isinstance(family, str) else family
    if family not in PATH_FAMILIES:
        raise GraphError(f"{family.value} is not a path-like family")
    if n < 1:
        raise GraphError("path-like families need n >= 1")
    label = FamilySpec(family, n, None if q is None else Fraction(q)).label()
    if family is FamilyId.PATH_Q:
        return _path_graph(n, Fraction(1 if q is None else q), {}, label)
    if family in (FamilyId.LOOP_Q, FamilyId.LOOP_QP, FamilyId.LOOP_R, FamilyId.LOOP_RP):
        sign = -1 if family in (FamilyId.LOOP_QP, FamilyId.LOOP_RP) else 1
        loops = {i: 2 * sign for i in range(n)}
        if family in (FamilyId.LOOP_R, FamilyId.LOOP_RP):
            loops[n - 1] = sign
        return _path_graph(n, 1, loops, label)
    # BLOCK_S(m): path on m-1 vertices with weight 2 edges, an extra vertex v
    # with an arc of weight 2 into the last path vertex and a loop of weight 4
    sign = -1 if family is FamilyId.BLOCK_SP else 1
    m = n
    extra = {(m - 1, m - 1): 4 * sign}
    if m >= 2:
        extra[(m - 1, m - 2)] = 2 * sign
    g = _path_graph(m - 1, 2 * sign, {}, label, None)
    pts = list(g.points) + [LatticePoint((2 * (m - 1), 0))]
    arcs = dict(g.arcs)
    arcs.update(extra)
    return LatticeGraph(pts, arcs, True, None, label)


def build_family(family, n: int, q=None, d: Optional[int] = None) -> LatticeGraph:
    """Construct the family graph of order ``n``."""
    family = FamilyId.parse(family) if isinstance(family, str) else family
    if n < 0:
        raise GraphError("order n must be nonnegative")
    if family in PATH_FAMILIES:
        return build_path_family(family, n, q)
    label = FamilySpec(family, n, None, d).label()
    F = FamilyId
    if family is F.GRID:
        return unit_step_graph(grid_points(n), label=label)
    if family is F.GRID_D:
        if d is None or d < 1:
            raise GraphError("GRID_D needs a dimension d >= 1")
        pts = [tuple(2 * c for c in p) for p in itertools.product(range(1, n + 1), repeat=d)]
        return unit_step_graph(pts, key=lambda p: p, label=label)
    if family is F.AZTEC:
        return unit_step_graph(aztec_points(n), label=label)
    if family is F.QUARTERED:
        return unit_step_graph(quartered_points(n), label=label)
    if family is F.ODD_DIAMOND:
        return unit_step_graph(odd_diamond_points(n), label=label)
    if family is F.MIXED_DIAMOND:
        return unit_step_graph(mixed_diamond_points(n), label=label)
    if family is F.HALF_ODD:
        return unit_step_graph([p for p in odd_diamond_points(n) if p[1] >= 0], label=label)
    if family is F.HALF_MIXED:
        return unit_step_graph([p for p in mixed_diamond_points(n) if p[1] >= 0], label=label)
    if family is F.HOLED_SQUARE:
        return unit_step_graph(holed_square_points(n), label=label)
    if family in (F.ZIGZAG_A, F.ZIGZAG_B, F.ZIGZAG_C, F.ZIGZAG_D):
        which = family.value[-1]
        return unit_step_graph(_double(zigzag_points(which, n)), label=label)
    if family in (F.ZIGZAG_A_TILDE, F.ZIGZAG_B_TILDE):
        which = "A" if family is F.ZIGZAG_A_TILDE else "B"
        g = unit_step_graph(_double(zigzag_points(which, n)), label=label)
        top = 2 * (2 * n - 1)
        arcs = {}
        for (u, v), w in g.arcs.items():
            pu, pv = g.points[u].coords, g.points[v].coords
            if pu[1] == top and pv[1] == top:
                w = Fraction(1, 2)
            arcs[(u, v)] = w
        return LatticeGraph(g.points, arcs, False, None, label)
    if family is F.PILLOWCASE:
        return _pillowcase(aztec_points(n), n, label, hull_factor=2)
    if family is F.ODD_PILLOWCASE:
        return _pillowcase(odd_diamond_points(n), n, label, hull_factor=2)
    if family is F.MARKED_QAD:
        g = unit_step_graph(quartered_points(n), label=label)
        marked = {i for i, p in enumerate(g.points) if p[0] - p[1] == 2 * n}
        return mark_directed(g, marked, label)
    if family is F.MARKED_HMD:
        g = unit_step_graph([p for p in mixed_diamond_points(n) if p[1] >= 0], label=label)
        marked = {i for i, p in enumerate(g.points) if p[1] == 0}
        return mark_directed(g, marked, label)
    if family is F.MARKED_HOD:
        g = unit_step_graph([p for p in odd_diamond_points(n) if p[1] >= 0], label=label)
        marked = {i for i, p in enumerate(g.points) if p[1] == 0}
        return mark_directed(g, marked, label)
    if family is F.MARKED_AD:
        g = unit_step_graph(aztec_points(n), label=label)
        marked = {i for i, p in enumerate(g.points) if abs(p[0]) + abs(p[1]) == 2 * n}
        return mark_directed(g, marked, label, marked_marked_factor=2)
    raise GraphError(f"no builder for {family}")


def _pillowcase(base_points, n: int, label: str, hull_factor) -> LatticeGraph:
    """Two copies of a diamond glued along the convex hull |x|+|y| = n.

    Edges between two hull vertices occur once in each copy; after gluing they
    are parallel and are folded into one edge of weight ``hull_factor``."""
    hull = {p for p in base_points if abs(p[0]) + abs(p[1]) == 2 * n}
    pts = []
    for p in base_points:
        if p in hull:
            pts.append((p[0], p[1], 0))
        else:
            pts.append((p[0], p[1], 2))
            pts.append((p[0], p[1], -2))
    pts.sort(key=position_key)
    idx = {p: i for i, p in enumerate(pts)}

    def lift(p, z):
        return idx[(p[0], p[1], 0)] if p in hull else idx[(p[0], p[1], z)]

    base = set(base_points)
    arcs: Dict[Tuple[int, int], object] = {}
    for p in base_points:
        for dx, dy in ((2, 0), (0, 2)):
            q = (p[0] + dx, p[1] + dy)
            if q not in base:
                continue
            if p in hull and q in hull:
                u, v = lift(p, 0), lift(q, 0)
                arcs[(u, v)] = arcs[(v, u)] = hull_factor
                continue
            for z in (2, -2):
                u, v = lift(p, z), lift(q, z)
                arcs[(u, v)] = arcs[(v, u)] = 1
    return LatticeGraph([LatticePoint(p) for p in pts], arcs, False, None, label)


def expected_vertex_count(family: FamilyId, n: int) -> Optional[int]:
    F = FamilyId
    table = {
        F.GRID: n * n,
        F.AZTEC: 2 * n * (n + 1),
        F.QUARTERED: n * (n + 1) // 2,
        F.ODD_DIAMOND: 2 * n * n + 2 * n + 1,
        F.MIXED_DIAMOND: 2 * n * n,
        F.HALF_MIXED: n * n + n,
        F.HALF_ODD: (n + 1) ** 2,
        F.HOLED_SQUARE: (2 * n + 1) ** 2 - 1,
        F.PILLOWCASE: 4 * n * n,
    }
    return table.get(family)
