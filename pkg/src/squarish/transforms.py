"""Structural transforms on lattice graphs: symmetry maps, orbit quotients,
Temperley refinement, inner duals and coordinate isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import GraphError, LatticeGraph, LatticePoint, position_key, unit_step_graph

# h: across the horizontal axis, v: across the vertical axis, r: quarter turn
# (counterclockwise), r2: half turn, diag: across y = x (through the bounding
# box), antidiag: across the other diagonal, sheet: z -> -z for the 3D
# pillowcase embedding.
SYMMETRY_KINDS = ("h", "v", "r", "r2", "diag", "antidiag", "sheet")


class SymmetryError(GraphError):
    pass


@dataclass(frozen=True)
class SymmetryMap:
    permutation: Tuple[int, ...]
    kind: str

    def __call__(self, v: int) -> int:
        return self.permutation[v]

    def order(self) -> int:
        k, cur = 1, list(self.permutation)
        ident = list(range(len(cur)))
        while cur != ident:
            cur = [self.permutation[c] for c in cur]
            k += 1
        return k

    def fixed(self) -> List[int]:
        return [v for v, w in enumerate(self.permutation) if v == w]

    def is_involution(self) -> bool:
        return all(self.permutation[w] == v for v, w in enumerate(self.permutation))

    def compose(self, other: "SymmetryMap", kind: str = "") -> "SymmetryMap":
        """self after other."""
        return SymmetryMap(tuple(self.permutation[w] for w in other.permutation),
                           kind or f"{self.kind}*{other.kind}")


def is_automorphism(g: LatticeGraph, perm: Sequence[int]) -> bool:
    n = g.num_vertices
    if sorted(perm) != list(range(n)):
        return False
    if any(g.marked[v] != g.marked[perm[v]] for v in range(n)):
        return False
    for (u, v), w in g.arcs.items():
        if g.arcs.get((perm[u], perm[v])) != w:
            return False
    return True


def bounding_box(g: LatticeGraph):
    dim = g.dimension()
    return [(min(p[k] for p in g.points), max(p[k] for p in g.points)) for k in range(dim)]


def point_map(g: LatticeGraph, kind: str):
    """The coordinate map for ``kind`` relative to g's bounding box."""
    if kind not in SYMMETRY_KINDS:
        raise SymmetryError(f"unknown symmetry kind {kind!r}")
    if g.num_vertices == 0:
        return lambda c: c
    box = bounding_box(g)
    if kind == "sheet":
        if len(box) < 3:
            raise SymmetryError("sheet symmetry needs a 3D embedding")
        z0, z1 = box[2]
        return lambda c: (c[0], c[1], z0 + z1 - c[2]) + tuple(c[3:])
    (x0, x1), (y0, y1) = box[0], box[1]
    sx, sy = x0 + x1, y0 + y1

    def half(v):
        if v % 2:
            raise SymmetryError(f"{kind} does not map the lattice to itself")
        return v // 2

    if kind == "h":
        return lambda c: (c[0], sy - c[1]) + tuple(c[2:])
    if kind == "v":
        return lambda c: (sx - c[0], c[1]) + tuple(c[2:])
    if kind == "r2":
        return lambda c: (sx - c[0], sy - c[1]) + tuple(c[2:])
    if kind == "r":
        return lambda c: (half(sx + sy - 2 * c[1]), half(sy - sx + 2 * c[0])) + tuple(c[2:])
    if kind == "diag":
        return lambda c: (x0 + c[1] - y0, y0 + c[0] - x0) + tuple(c[2:])
    if kind == "antidiag":
        return lambda c: (x0 + y1 - c[1], y0 + x1 - c[0]) + tuple(c[2:])
    raise SymmetryError(kind)


def symmetry_map(g: LatticeGraph, kind: str, check: bool = True) -> SymmetryMap:
    """Coordinate-induced permutation; errors unless it is an automorphism."""
    f = point_map(g, kind)
    idx = g.index()
    perm = []
    for p in g.points:
        img = idx.get(tuple(f(p.coords)))
        if img is None:
            raise SymmetryError(f"{kind} does not preserve the vertex set of {g.label or 'graph'}")
        perm.append(img)
    if check and not is_automorphism(g, perm):
        raise SymmetryError(f"{kind} is not an automorphism of {g.label or 'graph'}")
    return SymmetryMap(tuple(perm), kind)


def orbits(n: int, generators: Sequence[SymmetryMap]) -> List[List[int]]:
    seen = [-1] * n
    out = []
    for s in range(n):
        if seen[s] >= 0:
            continue
        orb = [s]
        seen[s] = len(out)
        k = 0
        while k < len(orb):
            u = orb[k]
            k += 1
            for gen in generators:
                w = gen.permutation[u]
                if seen[w] < 0:
                    seen[w] = len(out)
                    orb.append(w)
        out.append(sorted(orb))
    return out


def quotient_by_group(g: LatticeGraph, generators: Sequence[SymmetryMap],
                      representatives: Optional[Sequence[int]] = None,
                      label: str = "") -> LatticeGraph:
    """Orbit graph.  The arc weight from orbit O1 to O2 is the sum of weights
    from a fixed representative of O1 into all members of O2.  The result is
    undirected when that sum is symmetric, directed otherwise."""
    for gen in generators:
        if not is_automorphism(g, gen.permutation):
            raise SymmetryError(f"generator {gen.kind} is not an automorphism")
    orbs = orbits(g.num_vertices, generators)
    if representatives is not None:
        rep_of = {}
        for r in representatives:
            for k, o in enumerate(orbs):
                if r in o:
                    if k in rep_of:
                        raise SymmetryError("two representatives of one orbit")
                    rep_of[k] = r
        if len(rep_of) != len(orbs):
            raise SymmetryError("representatives do not cover all orbits")
        reps = [rep_of[k] for k in range(len(orbs))]
    else:
        reps = [o[0] for o in orbs]
    # order orbits by their representatives' positions
    order = sorted(range(len(orbs)), key=lambda k: position_key(g.points[reps[k]].coords))
    orbs = [orbs[k] for k in order]
    reps = [reps[k] for k in order]
    which = {}
    for k, o in enumerate(orbs):
        for v in o:
            which[v] = k
    adj = g.out_neighbors()
    arcs: Dict[Tuple[int, int], object] = {}
    for k, r in enumerate(reps):
        for w, wt in adj[r]:
            key = (k, which[w])
            arcs[key] = arcs.get(key, 0) + wt
    arcs = {a: w for a, w in arcs.items() if w != 0}
    symmetric = all(arcs.get((b, a)) == w for (a, b), w in arcs.items())
    return LatticeGraph([g.points[r] for r in reps], arcs, g.directed or not symmetric,
                        [g.marked[r] for r in reps], label or (g.label + "/G"))


# ---------------------------------------------------------------------------
# planar grid subgraphs

def _require_grid(g: LatticeGraph):
    if g.directed or g.dimension() != 2:
        raise GraphError("expected an undirected planar lattice graph")
    pts = [p.coords for p in g.points]
    px = {c[0] % 2 for c in pts}
    py = {c[1] % 2 for c in pts}
    if len(px) > 1 or len(py) > 1:
        raise GraphError("mixed coordinate parities: not a grid subgraph")
    idx = g.index()
    for (u, v), w in g.arcs.items():
        a, b = g.points[u].coords, g.points[v].coords
        if u == v or abs(a[0] - b[0]) + abs(a[1] - b[1]) != 2:
            raise GraphError(f"arc ({u},{v}) is not a unit grid step")
    # induced check is not required; edges must be unit steps
    return idx


def unit_square_faces(g: LatticeGraph) -> List[Tuple[int, int, int, int]]:
    """Unit squares all of whose four sides are edges; checks that these are
    exactly the bounded faces (Euler count per connected component)."""
    _require_grid(g)
    idx = g.index()
    faces = []
    for p in g.points:
        x, y = p.coords
        corners = [(x, y), (x + 2, y), (x + 2, y + 2), (x, y + 2)]
        ids = [idx.get(c) for c in corners]
        if None in ids:
            continue
        a, b, c, d = ids
        if all(g.arcs.get(e) is not None for e in ((a, b), (b, c), (c, d), (d, a))):
            faces.append((a, b, c, d))
    E = g.num_edges()
    V = g.num_vertices
    C = len(g.components())
    bounded = E - V + C
    if bounded != len(faces):
        raise GraphError(f"{bounded} bounded faces but only {len(faces)} unit squares: "
                         "a bounded face is not a unit square")
    return faces


def temperley_refinement(g: LatticeGraph, label: str = "") -> LatticeGraph:
    """Half-step refinement: original vertices, edge midpoints, face centers.

    Coordinates of the result are doubled again (so the original integer
    lattice maps to even-even stored points and the result is a unit-step
    graph in its own right)."""
    faces = unit_square_faces(g)
    pts = set()
    for p in g.points:
        pts.add((2 * p[0], 2 * p[1]))
    for u, v, _ in g.edges():
        a, b = g.points[u].coords, g.points[v].coords
        pts.add((a[0] + b[0], a[1] + b[1]))
    for f in faces:
        xs = [g.points[v][0] for v in f]
        ys = [g.points[v][1] for v in f]
        pts.add((sum(xs) // 2, sum(ys) // 2))
    # the refinement's edges are exactly the unit steps between these points:
    # vertex-midpoint and midpoint-face center pairs (no two original vertices
    # or two midpoints are one refined step apart)
    return unit_step_graph(pts, step=2, label=label or f"T({g.label})")


def inner_dual(g: LatticeGraph, label: str = "") -> LatticeGraph:
    """Bounded faces as vertices, adjacent when sharing an edge."""
    faces = unit_square_faces(g)
    centers = []
    for f in faces:
        xs = [g.points[v][0] for v in f]
        ys = [g.points[v][1] for v in f]
        centers.append((sum(xs) // 4, sum(ys) // 4))
    return unit_step_graph(centers, step=2, label=label or f"dual({g.label})")


def outer_boundary_vertices(g: LatticeGraph) -> List[int]:
    """Vertices incident to the infinite face of a planar grid subgraph.

    A vertex is on the infinite face iff one of the four unit squares at it is
    not a bounded face (the square's interior then belongs to the unbounded
    region or to a hole; holes are excluded by the face check)."""
    faces = unit_square_faces(g)
    face_set = set()
    for f in faces:
        xs = [g.points[v][0] for v in f]
        ys = [g.points[v][1] for v in f]
        face_set.add((min(xs), min(ys)))
    out = []
    for v, p in enumerate(g.points):
        x, y = p.coords
        around = [(x, y), (x - 2, y), (x - 2, y - 2), (x, y - 2)]
        if not all(c in face_set for c in around):
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# isomorphisms realised by rigid motions of the lattice

def _squeeze(coords_list):
    """Drop coordinates that are constant over the whole point set."""
    if not coords_list:
        return coords_list
    dim = len(coords_list[0])
    keep = [k for k in range(dim) if len({c[k] for c in coords_list}) > 1]
    if len(keep) < 2 and dim >= 2:
        keep = list(range(min(2, dim)))
    return [tuple(c[k] for k in keep) for c in coords_list]


def _dihedral(c, k):
    x, y = c[0], c[1]
    for _ in range(k % 4):
        x, y = -y, x
    if k >= 4:
        x = -x
    return (x, y) + tuple(c[2:])


def lattice_isomorphism(g: LatticeGraph, h: LatticeGraph, marks: bool = True,
                        allow_scale: bool = False) -> Optional[List[int]]:
    """A vertex bijection g -> h induced by a symmetry of the square plus a
    translation, preserving arcs, weights and (optionally) marks.  Coordinates
    constant on a whole graph are ignored.  Returns None if none exists."""
    if g.num_vertices != h.num_vertices or len(g.arcs) != len(h.arcs):
        return None
    if g.num_vertices == 0:
        return []
    gc = _squeeze([p.coords for p in g.points])
    hc = _squeeze([p.coords for p in h.points])
    if len(gc[0]) != len(hc[0]):
        return None
    scales = [Fraction(1)]
    if allow_scale:
        def spread(cs):
            return max(max(c[k] for c in cs) - min(c[k] for c in cs) for k in range(len(cs[0])))
        sg, sh = spread(gc), spread(hc)
        if sg and sh:
            scales = [Fraction(sh, sg)]
    hidx = {c: i for i, c in enumerate(hc)}
    ks = range(8) if len(gc[0]) == 2 else [0]
    for s in scales:
        for k in ks:
            moved = [tuple(s * v for v in _dihedral(c, k)) for c in gc]
            mins_g = [min(c[i] for c in moved) for i in range(len(moved[0]))]
            mins_h = [min(c[i] for c in hc) for i in range(len(hc[0]))]
            perm = []
            ok = True
            for c in moved:
                t = tuple(c[i] - mins_g[i] + mins_h[i] for i in range(len(c)))
                if any(isinstance(v, Fraction) and v.denominator != 1 for v in t):
                    ok = False
                    break
                j = hidx.get(tuple(int(v) for v in t))
                if j is None:
                    ok = False
                    break
                perm.append(j)
            if not ok or len(set(perm)) != len(perm):
                continue
            if marks and any(g.marked[v] != h.marked[perm[v]] for v in range(len(perm))):
                continue
            if all(h.arcs.get((perm[u], perm[v])) == w for (u, v), w in g.arcs.items()):
                return perm
    return None


def is_lattice_isomorphic(g: LatticeGraph, h: LatticeGraph, **kw) -> bool:
    return lattice_isomorphism(g, h, **kw) is not None
