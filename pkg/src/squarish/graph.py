"""Weighted lattice graphs with exact rational arc weights.

Vertex coordinates are stored at half-unit scale: the stored integer ``c``
stands for the real coordinate ``c/2``.  Arcs live in a map from ordered
vertex pairs to nonzero rationals; undirected graphs store both directions
with equal weights.  Loops are ``(v, v)`` entries.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import BigRationalMatrix
from .poly import _norm


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True, order=True)
class LatticePoint:
    coords: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) < 1:
            raise GraphError("a lattice point needs dimension >= 1")

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def real(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.coords)

    def __getitem__(self, k: int) -> int:
        return self.coords[k]


Arc = Tuple[int, int]


class LatticeGraph:
    """Immutable weighted (di)graph whose vertices carry lattice coordinates."""

    __slots__ = ("points", "marked", "arcs", "directed", "label", "_index", "_adj")

    def __init__(self, points: Sequence[LatticePoint], arcs: Mapping[Arc, object],
                 directed: bool = False, marked: Optional[Sequence[bool]] = None,
                 label: str = ""):
        self.points: Tuple[LatticePoint, ...] = tuple(
            p if isinstance(p, LatticePoint) else LatticePoint(tuple(p)) for p in points)
        n = len(self.points)
        self.marked: Tuple[bool, ...] = tuple(bool(m) for m in marked) if marked else (False,) * n
        if len(self.marked) != n:
            raise GraphError("marked flags do not match vertex count")
        clean: Dict[Arc, object] = {}
        for (u, v), w in arcs.items():
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u},{v}) references an unknown vertex")
            w = _norm(w)
            if w != 0:
                clean[(u, v)] = w
        if not directed:
            for (u, v), w in clean.items():
                if clean.get((v, u)) != w:
                    raise GraphError(f"undirected graph has asymmetric weight on ({u},{v})")
        self.arcs: Dict[Arc, object] = dict(sorted(clean.items()))
        self.directed = bool(directed)
        self.label = label
        self._index = None
        self._adj = None

    # basic queries --------------------------------------------------------
    @property
    def num_vertices(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def weight(self, u: int, v: int):
        return self.arcs.get((u, v), 0)

    def index(self) -> Dict[Tuple[int, ...], int]:
        if self._index is None:
            self._index = {p.coords: i for i, p in enumerate(self.points)}
        return self._index

    def vertex_at(self, coords: Sequence[int]) -> Optional[int]:
        return self.index().get(tuple(coords))

    def out_neighbors(self) -> List[List[Tuple[int, object]]]:
        if self._adj is None:
            adj: List[List[Tuple[int, object]]] = [[] for _ in self.points]
            for (u, v), w in self.arcs.items():
                adj[u].append((v, w))
            self._adj = adj
        return self._adj

    def neighbors(self, v: int) -> List[int]:
        return [w for w, _ in self.out_neighbors()[v] if w != v]

    def edges(self) -> List[Tuple[int, int, object]]:
        """Undirected edge list (u <= v)."""
        if self.directed:
            raise GraphError("edges() is only defined for undirected graphs")
        return [(u, v, w) for (u, v), w in self.arcs.items() if u <= v]

    def num_edges(self) -> int:
        return len([1 for u, v, _ in self.edges() if u != v])

    def adjacency(self) -> BigRationalMatrix:
        n = self.num_vertices
        rows = [[0] * n for _ in range(n)]
        for (u, v), w in self.arcs.items():
            rows[u][v] = w
        return BigRationalMatrix(rows, cols=n)

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.arcs)

    def is_connected(self) -> bool:
        n = self.num_vertices
        if n == 0:
            return True
        und = [[] for _ in range(n)]
        for u, v in self.arcs:
            und[u].append(v)
            und[v].append(u)
        seen = [False] * n
        seen[0] = True
        todo = deque([0])
        while todo:
            u = todo.popleft()
            for v in und[u]:
                if not seen[v]:
                    seen[v] = True
                    todo.append(v)
        return all(seen)

    def components(self) -> List[List[int]]:
        n = self.num_vertices
        und = [[] for _ in range(n)]
        for u, v in self.arcs:
            und[u].append(v)
            und[v].append(u)
        comp = [-1] * n
        out = []
        for s in range(n):
            if comp[s] >= 0:
                continue
            comp[s] = len(out)
            cur = [s]
            todo = [s]
            while todo:
                u = todo.pop()
                for v in und[u]:
                    if comp[v] < 0:
                        comp[v] = comp[s]
                        cur.append(v)
                        todo.append(v)
            out.append(sorted(cur))
        return out

    def bipartition(self) -> Optional[List[int]]:
        """Proper 2-coloring (0/1 per vertex) or None; loops make it non-bipartite."""
        n = self.num_vertices
        color = [-1] * n
        adj = self.out_neighbors()
        for s in range(n):
            if color[s] >= 0:
                continue
            color[s] = 0
            todo = [s]
            while todo:
                u = todo.pop()
                for v, _ in adj[u]:
                    if color[v] < 0:
                        color[v] = 1 - color[u]
                        todo.append(v)
                    elif color[v] == color[u]:
                        return None
        return color

    def dimension(self) -> int:
        return self.points[0].dimension if self.points else 2

    # derived graphs ---------------------------------------------------------
    def induced(self, keep: Iterable[int], label: str = "") -> "LatticeGraph":
        """Induced subgraph on ``keep`` (order preserved as given)."""
        keep = list(keep)
        pos = {v: i for i, v in enumerate(keep)}
        arcs = {(pos[u], pos[v]): w for (u, v), w in self.arcs.items() if u in pos and v in pos}
        return LatticeGraph([self.points[v] for v in keep], arcs, self.directed,
                            [self.marked[v] for v in keep], label)

    def delete_vertices(self, drop: Iterable[int]) -> "LatticeGraph":
        drop = set(drop)
        return self.induced([v for v in range(self.num_vertices) if v not in drop], self.label)

    def with_arcs(self, arcs: Mapping[Arc, object], directed: Optional[bool] = None,
                  marked: Optional[Sequence[bool]] = None) -> "LatticeGraph":
        return LatticeGraph(self.points, arcs, self.directed if directed is None else directed,
                            self.marked if marked is None else marked, self.label)

    def relabeled(self, order: Sequence[int]) -> "LatticeGraph":
        """Same graph with vertices listed in ``order`` (a permutation of ids)."""
        if sorted(order) != list(range(self.num_vertices)):
            raise GraphError("relabel order must be a permutation")
        return self.induced(order, self.label)

    def sorted_by_position(self) -> "LatticeGraph":
        return self.relabeled(sorted(range(self.num_vertices),
                                     key=lambda v: position_key(self.points[v].coords)))

    def isomorphic_by_translation(self, other: "LatticeGraph") -> bool:
        """Equality up to a translation of coordinates (vertex order ignored)."""
        return canonical_form(self, transforms=False) == canonical_form(other, transforms=False)

    # equality ------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeGraph):
            return NotImplemented
        return (self.points == other.points and self.marked == other.marked
                and self.arcs == other.arcs and self.directed == other.directed)

    def __hash__(self):
        return hash((self.points, self.marked, tuple(self.arcs.items()), self.directed))

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        tag = f" {self.label}" if self.label else ""
        return f"<LatticeGraph{tag} {kind} |V|={self.num_vertices} arcs={len(self.arcs)}>"


def position_key(coords: Sequence[int]):
    """Canonical 2D order: y descending then x ascending.  Higher dimensions use
    (last coordinate descending, ..., y descending, x ascending)."""
    if len(coords) == 1:
        return (coords[0],)
    return tuple(-c for c in reversed(coords[1:])) + (coords[0],)


def unit_step_graph(points: Iterable[Sequence[int]], step: int = 2, key=None,
                    label: str = "", weight=1) -> LatticeGraph:
    """Undirected graph joining stored points that differ by ``step`` along one axis."""
    pts = sorted({tuple(p) for p in points}, key=key or position_key)
    idx = {p: i for i, p in enumerate(pts)}
    arcs = {}
    for p, i in idx.items():
        for k in range(len(p)):
            q = list(p)
            q[k] += step
            j = idx.get(tuple(q))
            if j is not None:
                arcs[(i, j)] = weight
                arcs[(j, i)] = weight
    return LatticeGraph([LatticePoint(p) for p in pts], arcs, False, None, label)


def disjoint_union(graphs: Sequence[LatticeGraph], label: str = "") -> LatticeGraph:
    """Disjoint union; coordinates are offset along a fresh trailing axis."""
    points, arcs, marked = [], {}, []
    directed = any(g.directed for g in graphs)
    off = 0
    for k, g in enumerate(graphs):
        for p in g.points:
            points.append(LatticePoint(p.coords + (2 * k,)))
        marked.extend(g.marked)
        for (u, v), w in g.arcs.items():
            arcs[(u + off, v + off)] = w
        off += g.num_vertices
    if len({p.dimension for p in points}) > 1:
        raise GraphError("disjoint_union needs equal dimensions")
    return LatticeGraph(points, arcs, directed, marked, label)


# ---------------------------------------------------------------------------
# canonical forms for lattice graphs (dihedral transforms + translation)

def _dihedral(coords, k: int):
    x, y = coords
    for _ in range(k % 4):
        x, y = -y, x
    if k >= 4:
        x = -x
    return (x, y)


def canonical_form(g: LatticeGraph, transforms: bool = True):
    """A hashable form invariant under translations (and, when ``transforms``,
    the eight symmetries of the square).  Only unit-step undirected lattice
    graphs are compared this way; weights and marks are included."""
    best = None
    ks = range(8) if transforms and g.dimension() == 2 else [0]
    for k in ks:
        pts = [(_dihedral(p.coords, k) if g.dimension() == 2 else p.coords) for p in g.points]
        if not pts:
            return ()
        mins = [min(c[i] for c in pts) for i in range(len(pts[0]))]
        shifted = [tuple(c[i] - mins[i] for i in range(len(c))) for c in pts]
        arcs = tuple(sorted((shifted[u], shifted[v], str(w)) for (u, v), w in g.arcs.items()))
        marks = tuple(sorted(shifted[v] for v in range(g.num_vertices) if g.marked[v]))
        form = (tuple(sorted(shifted)), arcs, marks)
        if best is None or form < best:
            best = form
    return best


# ---------------------------------------------------------------------------
# text exchange format

def _fmt_weight(w) -> str:
    w = Fraction(w)
    return f"{w.numerator}/{w.denominator}"


def serialize(g: LatticeGraph) -> str:
    lines = [f"graph {'directed' if g.directed else 'undirected'} {g.num_vertices}"]
    for i, p in enumerate(g.points):
        tail = " m" if g.marked[i] else ""
        lines.append("v " + str(i) + " " + " ".join(str(c) for c in p.coords) + tail)
    for (u, v), w in sorted(g.arcs.items()):
        lines.append(f"a {u} {v} {_fmt_weight(w)}")
    return "\n".join(lines) + "\n"


def _parse_weight(tok: str, line: int, col: int) -> Fraction:
    num, sep, den = tok.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ParseError(line, col, f"bad rational weight {tok!r}") from None
    if q <= 0:
        raise ParseError(line, col, "weight denominator must be positive")
    return Fraction(p, q)


def parse(text: str) -> LatticeGraph:
    header = None
    verts: Dict[int, Tuple[Tuple[int, ...], bool]] = {}
    arcs: Dict[Arc, Fraction] = {}
    pending = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        toks = body.split()
        cols = []
        pos = 0
        for t in toks:
            pos = body.index(t, pos)
            cols.append(pos + 1)
            pos += len(t)
        tag = toks[0]
        if header is None:
            if tag != "graph" or len(toks) != 3 or toks[1] not in ("directed", "undirected"):
                raise ParseError(ln, cols[0], "expected 'graph <directed|undirected> <count>'")
            try:
                count = int(toks[2])
            except ValueError:
                raise ParseError(ln, cols[2], "vertex count must be an integer") from None
            header = (toks[1] == "directed", count)
            continue
        if tag == "v":
            if len(toks) < 3:
                raise ParseError(ln, cols[0], "vertex line needs an id and coordinates")
            marked = toks[-1] == "m"
            nums = toks[1:-1] if marked else toks[1:]
            try:
                vals = [int(t) for t in nums]
            except ValueError:
                bad = next(k for k, t in enumerate(nums) if not t.lstrip("-").isdigit())
                raise ParseError(ln, cols[1 + bad], f"bad integer {nums[bad]!r}") from None
            if len(vals) < 2:
                raise ParseError(ln, cols[0], "vertex line needs at least one coordinate")
            vid = vals[0]
            if vid in verts:
                raise ParseError(ln, cols[1], f"duplicate vertex id {vid}")
            verts[vid] = (tuple(vals[1:]), marked)
        elif tag == "a":
            if len(toks) != 4:
                raise ParseError(ln, cols[0], "arc line must be 'a <src> <dst> <p>/<q>'")
            try:
                u, v = int(toks[1]), int(toks[2])
            except ValueError:
                raise ParseError(ln, cols[1], "arc endpoints must be integers") from None
            w = _parse_weight(toks[3], ln, cols[3])
            if (u, v) in arcs:
                raise ParseError(ln, cols[0], f"duplicate arc ({u},{v})")
            arcs[(u, v)] = w
            pending.append((u, v, ln, cols))
        else:
            raise ParseError(ln, cols[0], f"unknown record type {tag!r}")
    if header is None:
        raise ParseError(1, 1, "missing graph header")
    directed, count = header
    if sorted(verts) != list(range(count)):
        raise ParseError(1, 1, f"vertex ids must be exactly 0..{count - 1}")
    for u, v, ln, cols in pending:
        if u not in verts:
            raise ParseError(ln, cols[1], f"arc references unknown vertex {u}")
        if v not in verts:
            raise ParseError(ln, cols[2], f"arc references unknown vertex {v}")
    dims = {len(verts[i][0]) for i in verts}
    if len(dims) > 1:
        raise ParseError(1, 1, "vertices have mixed dimensions")
    try:
        return LatticeGraph([LatticePoint(verts[i][0]) for i in range(count)], arcs, directed,
                            [verts[i][1] for i in range(count)])
    except GraphError as exc:
        raise ParseError(1, 1, str(exc)) from None
