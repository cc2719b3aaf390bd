"""Similarity decompositions of adjacency matrices.

Vectors live in the space of formal combinations sum c_v e_v over the vertices
of a graph; the adjacency map sends e_v to sum_w a(v,w) e_w (row convention,
so its matrix in the basis {e_v} is the adjacency matrix).  A decomposition is
certified by exhibiting, per block, vectors on which the map acts as the
block's adjacency matrix, and checking that all vectors together form a basis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .families import FamilyId, build_family
from .graph import GraphError, LatticeGraph
from .linalg import SMITH_CAP, BigRationalMatrix, LinalgError, charpoly, smith_form_xI_minus_A
from .poly import Poly, product
from .transforms import SymmetryMap, is_automorphism, lattice_isomorphism, symmetry_map

F = FamilyId


class DecompositionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse vectors

class SparseVector:
    """Exact rational combination of basis indeterminates e_v; zeros are never
    stored."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None):
        self.coeffs: Dict[int, Fraction] = {}
        for v, c in (coeffs or {}).items():
            c = Fraction(c)
            if c != 0:
                self.coeffs[v] = c

    @classmethod
    def basis(cls, v: int, c=1) -> "SparseVector":
        return cls({v: c})

    def __add__(self, other: "SparseVector") -> "SparseVector":
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out.get(v, 0) + c
        return SparseVector(out)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + other.scale(-1)

    def __neg__(self) -> "SparseVector":
        return self.scale(-1)

    def scale(self, c) -> "SparseVector":
        return SparseVector({v: c * x for v, x in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseVector) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __getitem__(self, v: int) -> Fraction:
        return self.coeffs.get(v, Fraction(0))

    def __len__(self) -> int:
        return len(self.coeffs)

    def support(self) -> List[int]:
        return sorted(self.coeffs)

    def dense(self, n: int) -> List[Fraction]:
        row = [Fraction(0)] * n
        for v, c in self.coeffs.items():
            row[v] = c
        return row

    def remap(self, perm: Sequence[int]) -> "SparseVector":
        return SparseVector({perm[v]: c for v, c in self.coeffs.items()})

    def __repr__(self) -> str:
        terms = " ".join(f"{c:+}e{v}" for v, c in sorted(self.coeffs.items()))
        return f"SparseVector({terms or '0'})"


def combination(terms: Iterable[Tuple[object, SparseVector]]) -> SparseVector:
    out = SparseVector()
    for c, vec in terms:
        out = out + vec.scale(c)
    return out


def apply_adjacency(g: LatticeGraph, vec: SparseVector) -> SparseVector:
    """The adjacency map: e_v -> sum_w a(v,w) e_w, extended linearly."""
    adj = g.out_neighbors()
    out: Dict[int, Fraction] = {}
    for v, c in vec.coeffs.items():
        for w, a in adj[v]:
            out[w] = out.get(w, 0) + c * a
    return SparseVector(out)


# ---------------------------------------------------------------------------
# plans and certificates

class Mode(enum.Enum):
    EXPLICIT = "explicit-basis"
    CHARPOLY = "charpoly-product"
    SMITH = "smith-form"

    @classmethod
    def parse(cls, text) -> "Mode":
        if isinstance(text, Mode):
            return text
        t = str(text).strip().lower()
        aliases = {"explicit": cls.EXPLICIT, "explicit-basis": cls.EXPLICIT,
                   "charpoly": cls.CHARPOLY, "charpoly-product": cls.CHARPOLY,
                   "smith": cls.SMITH, "smith-form": cls.SMITH}
        if t not in aliases:
            raise DecompositionError(f"unknown certification mode {text!r}")
        return aliases[t]


@dataclass
class DecompositionPlan:
    theorem: str
    n: int
    source: LatticeGraph
    blocks: List[LatticeGraph]
    vectors: Optional[List[List[SparseVector]]] = None
    mode: Mode = Mode.CHARPOLY

    def __post_init__(self):
        self.mode = Mode.parse(self.mode)
        if self.vectors is not None:
            if len(self.vectors) != len(self.blocks):
                raise DecompositionError("one vector group per block is required")
            for vecs, b in zip(self.vectors, self.blocks):
                if len(vecs) != b.num_vertices:
                    raise DecompositionError(
                        f"block {b.label} has {b.num_vertices} vertices but {len(vecs)} vectors")
        if self.mode is Mode.EXPLICIT:
            if self.vectors is None:
                raise DecompositionError(f"no explicit vectors available for {self.theorem}")
            total = sum(len(v) for v in self.vectors)
            if total != self.source.num_vertices:
                raise DecompositionError(
                    f"{total} vectors for a {self.source.num_vertices}-vertex graph")

    def with_mode(self, mode) -> "DecompositionPlan":
        return DecompositionPlan(self.theorem, self.n, self.source, self.blocks, self.vectors,
                                 Mode.parse(mode))

    def block_matrix(self) -> BigRationalMatrix:
        return BigRationalMatrix.block_diag([b.adjacency() for b in self.blocks])


@dataclass(frozen=True)
class ActionFailure:
    block: int
    index: int
    detail: str


@dataclass
class ActionReport:
    checked: int
    failures: List[ActionFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_f_action(plan: DecompositionPlan) -> ActionReport:
    """For every vector b_i of block B check F(b_i) = sum_j B[i,j] b_j, where B
    is the block's adjacency matrix (terms outside the block are absent)."""
    if plan.vectors is None:
        raise DecompositionError("plan has no explicit vectors")
    report = ActionReport(0)
    for k, (block, vecs) in enumerate(zip(plan.blocks, plan.vectors)):
        adj = block.out_neighbors()
        for i, vec in enumerate(vecs):
            lhs = apply_adjacency(plan.source, vec)
            rhs = combination((w, vecs[j]) for j, w in adj[i])
            report.checked += 1
            if lhs != rhs:
                diff = lhs - rhs
                v = diff.support()[0]
                report.failures.append(ActionFailure(
                    k, i, f"block {block.label or k} vector {i}: coefficient of e{v} "
                          f"off by {diff[v]}"))
    return report


@dataclass(frozen=True)
class SimilarityCertificate:
    theorem: str
    n: int
    mode: Mode
    passed: Optional[bool]  # None: not attempted (size cap)
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.passed is False

    def line(self) -> str:
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]
        tail = f" {self.detail}" if self.detail else ""
        return f"CERT {self.theorem} {self.n} {self.mode.value} {status}{tail}"


def _transition(plan: DecompositionPlan) -> BigRationalMatrix:
    n = plan.source.num_vertices
    rows = [vec.dense(n) for vecs in plan.vectors for vec in vecs]
    return BigRationalMatrix(rows, cols=n)


def certify_similarity(plan: DecompositionPlan) -> SimilarityCertificate:
    """Certify source ~ disjoint union of blocks in the plan's mode.

    explicit-basis: the vectors are the rows of a transition matrix P; P must
    be invertible and P A P^-1 must equal the block diagonal matrix exactly.
    charpoly-product: charpoly(A) equals the product of block charpolys.
    smith-form: xI - A and xI - blockdiag have the same invariant factors."""
    A = plan.source.adjacency()
    mode = plan.mode
    cert = lambda ok, detail="": SimilarityCertificate(plan.theorem, plan.n, mode, ok, detail)
    if mode is Mode.EXPLICIT:
        P = _transition(plan)
        try:
            Pinv = P.inverse()
        except LinalgError:
            return cert(False, "transition matrix is singular")
        conj = P @ A @ Pinv
        D = plan.block_matrix()
        for i in range(D.rows):
            for j in range(D.cols):
                if conj[i, j] != D[i, j]:
                    return cert(False, f"entry ({i},{j}) is {conj[i, j]} expected {D[i, j]}")
        return cert(True, f"dim={D.rows} blocks={len(plan.blocks)}")
    if mode is Mode.CHARPOLY:
        lhs = charpoly(A)
        rhs = product([charpoly(b.adjacency()) for b in plan.blocks])
        if lhs != rhs:
            diff = lhs - rhs
            k = next(i for i, c in enumerate(diff.coeffs) if c != 0)
            at = lambda p: p.coeffs[k] if k < len(p.coeffs) else 0
            return cert(False, f"coefficient of x^{k}: {at(lhs)} vs {at(rhs)}")
        return cert(True, f"degree={lhs.degree}")
    if A.rows > SMITH_CAP:
        return cert(None, f"dimension {A.rows} exceeds the Smith-form cap {SMITH_CAP}")
    lhs = smith_form_xI_minus_A(A)
    rhs = smith_form_xI_minus_A(plan.block_matrix())
    if lhs != rhs:
        return cert(False, f"invariant factors differ: {lhs.nontrivial()} vs {rhs.nontrivial()}")
    return cert(True, f"factors={len(lhs.nontrivial())}")


# ---------------------------------------------------------------------------
# order-2 automorphism split

@dataclass
class InvolutionSplit:
    """G+ on V1 and the marked digraph G- on V1 u V0.  ``plus_vertices[i]`` is
    the vertex of g behind vertex i of g_plus, likewise for g_minus."""
    source: LatticeGraph
    t: Tuple[int, ...]
    g_plus: LatticeGraph
    g_minus: LatticeGraph
    plus_vertices: Tuple[int, ...]
    minus_vertices: Tuple[int, ...]

    def plus_vector(self, i: int) -> SparseVector:
        """(e_v - e_T(v))/2 for the i-th vertex of G+."""
        v = self.plus_vertices[i]
        return SparseVector({v: Fraction(1, 2)}) - SparseVector({self.t[v]: Fraction(1, 2)})

    def lift_minus(self, vec: SparseVector) -> SparseVector:
        """Image of a vector of G-'s space under e_u -> (e_u + e_T(u))/2."""
        out = SparseVector()
        for i, c in vec.coeffs.items():
            u = self.minus_vertices[i]
            out = out + SparseVector({u: c / 2}) + SparseVector({self.t[u]: c / 2})
        return out

    def lift_plus(self, vec: SparseVector) -> SparseVector:
        """Image of a vector of G+'s space under e_v -> (e_v - e_T(v))/2."""
        return combination((c, self.plus_vector(i)) for i, c in vec.coeffs.items())

    def plan(self, theorem: str = "LEMMA1_1", n: int = 0, mode=Mode.EXPLICIT) -> DecompositionPlan:
        plus = [self.plus_vector(i) for i in range(self.g_plus.num_vertices)]
        minus = [self.lift_minus(SparseVector.basis(i)) for i in range(self.g_minus.num_vertices)]
        return DecompositionPlan(theorem, n, self.source, [self.g_plus, self.g_minus],
                                 [plus, minus], mode)


def lemma11_split(g: LatticeGraph, t, v1: Optional[Iterable[int]] = None) -> InvolutionSplit:
    """Split g along an order-2 automorphism whose fixed set separates V1 from
    T(V1).  Without ``v1`` each swapped pair of components contributes the one
    holding the lower-numbered vertex."""
    perm = tuple(t.permutation if isinstance(t, SymmetryMap) else t)
    n = g.num_vertices
    if g.directed:
        raise DecompositionError("the split needs an undirected graph")
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise DecompositionError("not a permutation of the vertices")
    if any(perm[perm[v]] != v for v in range(n)):
        raise DecompositionError("automorphism is not an involution")
    if not is_automorphism(g, perm):
        raise DecompositionError("map is not an automorphism")
    v0 = [v for v in range(n) if perm[v] == v]
    rest = g.delete_vertices(v0)
    kept = [v for v in range(n) if perm[v] != v]
    comps = [sorted(kept[i] for i in c) for c in rest.components()]
    comp_of = {v: k for k, c in enumerate(comps) for v in c}
    for k, c in enumerate(comps):
        if comp_of[perm[c[0]]] == k:
            raise DecompositionError("fixed vertices do not separate V1 from T(V1)")
    if v1 is None:
        chosen = set()
        for c in comps:
            partner = comps[comp_of[perm[c[0]]]]
            if c[0] < partner[0]:
                chosen.update(c)
    else:
        chosen = set(v1)
        if any(perm[v] in chosen or perm[v] == v for v in chosen):
            raise DecompositionError("V1 must avoid fixed vertices and its own image")
        if len(chosen) * 2 + len(v0) != n:
            raise DecompositionError("V1, T(V1) and the fixed set must cover the graph")
        for c in comps:
            inside = {v in chosen for v in c}
            if len(inside) != 1:
                raise DecompositionError("V1 must be a union of components")
    plus = sorted(chosen)
    minus = sorted(chosen | set(v0))
    fixed = set(v0)
    g_plus = g.induced(plus, (g.label or "G") + "+")
    pos = {v: i for i, v in enumerate(minus)}
    arcs = {}
    for (u, w), a in g.arcs.items():
        if u in pos and w in pos:
            arcs[(pos[u], pos[w])] = 2 * a if (u in fixed and w not in fixed) else a
    g_minus = LatticeGraph([g.points[v] for v in minus], arcs, True,
                           [v in fixed for v in minus], (g.label or "G") + "-")
    return InvolutionSplit(g, perm, g_plus, g_minus, tuple(plus), tuple(minus))


def lemma11_plan(g: LatticeGraph, t, mode=Mode.EXPLICIT, n: int = 0) -> DecompositionPlan:
    return lemma11_split(g, t).plan("LEMMA1_1", n, mode)


# ---------------------------------------------------------------------------
# marked quartered diamond

@dataclass
class Section2Vectors:
    graph: LatticeGraph
    v: Dict[Tuple[int, int], SparseVector]
    w: List[SparseVector]


def qad_vertex(g: LatticeGraph, i: int, j: int) -> Optional[int]:
    """Vertex of a (marked) quartered diamond at matrix coordinates (i, j)."""
    return g.vertex_at((2 * j - 1, 1 - 2 * i))


def build_section2_vectors(n: int) -> Section2Vectors:
    """The alternating cross vectors v_ij (i + j <= n) and the diagonal strip
    vectors w_k (k = 1..n) on the marked quartered diamond of order n."""
    g = build_family(F.MARKED_QAD, n)

    def e(i, j):
        v = qad_vertex(g, i, j)
        return SparseVector() if v is None else SparseVector.basis(v)

    vs = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1 - i):
            vs[(i, j)] = e(i - 1, j) - e(i, j - 1) + e(i + 1, j) - e(i, j + 1)
    ws = []
    for k in range(1, n + 1):
        diffs = set(range(k - n, n - k + 1, 2))
        coeffs = {}
        for i in range(1, n + 1):
            for j in range(1, n + 2 - i):
                if n - k + 2 <= i + j <= n + 1 and i - j in diffs:
                    coeffs[qad_vertex(g, i, j)] = 2 if i + j <= n else 1
        ws.append(SparseVector(coeffs))
    return Section2Vectors(g, vs, ws)


def marked_qad_plan(n: int, mode=Mode.EXPLICIT) -> DecompositionPlan:
    """Marked QAD_n ~ QAD_{n-1} + P_n with edge weights 2."""
    sv = build_section2_vectors(n)
    q = build_family(F.QUARTERED, n - 1)
    block1 = [sv.v[((1 - p.coords[1]) // 2, (p.coords[0] + 1) // 2)] for p in q.points]
    path = build_family(F.PATH_Q, n, q=2)
    return DecompositionPlan("THM2_1_MARKED", n, sv.graph, [q, path], [block1, sv.w], mode)


def _align(split_graph: LatticeGraph, target: LatticeGraph, what: str) -> List[int]:
    perm = lattice_isomorphism(split_graph, target)
    if perm is None:
        raise DecompositionError(f"{what} is not lattice-isomorphic to {target.label}")
    return perm


def _pull_back(vecs: Sequence[SparseVector], perm: Sequence[int]) -> List[SparseVector]:
    """Re-index vectors given on ``target`` to the split graph (perm: split -> target)."""
    inv = [0] * len(perm)
    for a, b in enumerate(perm):
        inv[b] = a
    return [vec.remap(inv) for vec in vecs]


def _ordered_plus(split: InvolutionSplit, target: LatticeGraph) -> List[SparseVector]:
    perm = _align(split.g_plus, target, "G+")
    order = [0] * len(perm)
    for a, b in enumerate(perm):
        order[b] = a
    return [split.plus_vector(order[b]) for b in range(target.num_vertices)]


def grid_split_plan(n: int, mode=Mode.EXPLICIT) -> DecompositionPlan:
    """G_n ~ QAD_{n-1} + marked QAD_n via the diagonal reflection."""
    g = build_family(F.GRID, n)
    split = lemma11_split(g, symmetry_map(g, "diag"))
    q = build_family(F.QUARTERED, n - 1)
    mq = build_family(F.MARKED_QAD, n)
    plus = _ordered_plus(split, q)
    perm = _align(split.g_minus, mq, "G-")
    basis = _pull_back([SparseVector.basis(i) for i in range(mq.num_vertices)], perm)
    minus = [split.lift_minus(b) for b in basis]
    return DecompositionPlan("THM2_1_SPLIT", n, g, [q, mq], [plus, minus], mode)


def grid_plan(n: int, mode=Mode.EXPLICIT) -> DecompositionPlan:
    """G_n ~ QAD_{n-1} + QAD_{n-1} + P_n with edge weights 2, with one explicit
    basis of the grid's space composed from both steps."""
    g = build_family(F.GRID, n)
    q = build_family(F.QUARTERED, n - 1)
    path = build_family(F.PATH_Q, n, q=2)
    blocks = [q, q, path]
    if Mode.parse(mode) is not Mode.EXPLICIT:
        return DecompositionPlan("THM2_1", n, g, blocks, None, mode)
    split = lemma11_split(g, symmetry_map(g, "diag"))
    mplan = marked_qad_plan(n)
    perm = _align(split.g_minus, mplan.source, "G-")
    plus = _ordered_plus(split, q)
    groups = [plus]
    for vecs in mplan.vectors:
        groups.append([split.lift_minus(v) for v in _pull_back(vecs, perm)])
    return DecompositionPlan("THM2_1", n, g, blocks, groups, mode)


# ---------------------------------------------------------------------------
# marked halved mixed diamond

@dataclass
class Section3Vectors:
    graph: LatticeGraph
    f: Dict[int, SparseVector]
    g: List[SparseVector]
    g_prime: List[SparseVector]
    levels: List[List[int]]
    columns: List[List[int]]


def _diag_vectors(gr: LatticeGraph, unmarked: Sequence[int], top_special: bool
                  ) -> Dict[int, SparseVector]:
    """Alternating diagonal-neighbour vectors f_v on the unmarked vertices,
    with the adjusted forms on the two slanted sides of their hull."""
    def e(c):
        v = gr.vertex_at(c)
        return SparseVector() if v is None else SparseVector.basis(v)

    pts = {v: gr.points[v].coords for v in unmarked}
    hi_sum = max(x + y for x, y in pts.values())
    lo_diff = min(x - y for x, y in pts.values())
    top = max(unmarked, key=lambda v: (pts[v][1], -pts[v][0]))
    out = {}
    for v in unmarked:
        x, y = pts[v]
        ne, nw, sw, se = e((x + 2, y + 2)), e((x - 2, y + 2)), e((x - 2, y - 2)), e((x + 2, y - 2))
        on_right = x + y == hi_sum
        on_left = x - y == lo_diff
        if top_special and v == top:
            out[v] = se - sw
        elif on_right and not on_left:
            out[v] = SparseVector.basis(v) + nw - sw + se
        elif on_left and not on_right:
            out[v] = -SparseVector.basis(v) - ne - sw + se
        else:
            out[v] = -ne + nw - sw + se
    return out


def build_section3_hmd_vectors(n: int) -> Section3Vectors:
    """f_v on the unmarked vertices and the level-strip vectors g_k, g'_k on the
    marked halved mixed diamond of order n."""
    if n < 2:
        raise DecompositionError("needs n >= 2")
    gr = build_family(F.MARKED_HMD, n)
    unmarked = [v for v in range(gr.num_vertices) if not gr.marked[v]]
    f = _diag_vectors(gr, unmarked, top_special=False)
    xs = sorted({p.coords[0] for p in gr.points})
    ys = sorted({p.coords[1] for p in gr.points})
    col = {x: c + 1 for c, x in enumerate(xs)}
    lev = {y: k + 1 for k, y in enumerate(ys)}
    levels = [[v for v in range(gr.num_vertices) if lev[gr.points[v].coords[1]] == k]
              for k in range(1, n + 1)]
    columns = [[v for v in range(gr.num_vertices) if col[gr.points[v].coords[0]] == c]
               for c in range(1, 2 * n + 1)]

    def cl(v):
        return col[gr.points[v].coords[0]]

    def lv(v):
        return lev[gr.points[v].coords[1]]

    black = {v: (cl(v) + lv(v)) % 2 == 0 for v in range(gr.num_vertices)}

    def wt(v):
        k = lv(v)
        return 1 if k == 1 else (-1) ** (k - 1) * 2

    # the outer columns of S_k are coloured symmetrically: on the right the
    # roles of the two colours swap (the strip pattern is mirror-symmetric)
    def outer_pick(v, k):
        c = cl(v)
        if c <= k:
            return black[v]
        if c >= 2 * n - k + 1:
            return not black[v]
        return False

    gs, gps = [], []
    for k in range(1, n + 1):
        inner = set(range(k, 2 * n - k + 2))
        lvls = set(range(k, 0, -2))
        s_k = [v for v in range(gr.num_vertices)
               if outer_pick(v, k) or (cl(v) in inner and lv(v) in lvls)]
        gs.append(SparseVector({v: (-1) ** (k - 1) * wt(v) for v in s_k}))
        gps.append(SparseVector({v: wt(v) if black[v] else -wt(v) for v in s_k}))
    return Section3Vectors(gr, f, gs, gps, levels, columns)


def _interior_block(gr: LatticeGraph, f: Dict[int, SparseVector], target: LatticeGraph
                    ) -> List[SparseVector]:
    """Order the f_v to match target's vertices (target = unmarked part moved
    by a translation)."""
    unmarked = sorted(f)
    sub = gr.induced(unmarked)
    perm = lattice_isomorphism(sub, target, marks=False)
    if perm is None:
        raise DecompositionError(f"unmarked part is not isomorphic to {target.label}")
    order = [0] * len(perm)
    for a, b in enumerate(perm):
        order[b] = unmarked[a]
    return [f[order[b]] for b in range(target.num_vertices)]


def marked_hmd_plan(n: int, mode=Mode.EXPLICIT) -> DecompositionPlan:
    """Marked HMD_n ~ HMD_{n-1} + R_n + R'_n."""
    sv = build_section3_hmd_vectors(n)
    h = build_family(F.HALF_MIXED, n - 1)
    block1 = _interior_block(sv.graph, sv.f, h)
    r, rp = build_family(F.LOOP_R, n), build_family(F.LOOP_RP, n)
    return DecompositionPlan("THM3_1_MARKED", n, sv.graph, [h, r, rp],
                             [block1, sv.g, sv.g_prime], mode)


def mixed_diamond_plan(n: int, mode=Mode.EXPLICIT) -> DecompositionPlan:
    """MD_n ~ HMD_{n-1} + HMD_{n-1} + R_n + R'_n."""
    g = build_family(F.MIXED_DIAMOND, n)
    h = build_family(F.HALF_MIXED, n - 1)
    blocks = [h, h, build_family(F.LOOP_R, n), build_family(F.LOOP_RP, n)]
    if Mode.parse(mode) is not Mode.EXPLICIT:
        return DecompositionPlan("THM3_1", n, g, blocks, None, mode)
    split = lemma11_split(g, symmetry_map(g, "h"))
    mplan = marked_hmd_plan(n)
    perm = _align(split.g_minus, mplan.source, "G-")
    groups = [_ordered_plus(split, h)]
    for vecs in mplan.vectors:
        groups.append([split.lift_minus(v) for v in _pull_back(vecs, perm)])
    return DecompositionPlan("THM3_1", n, g, blocks, groups, mode)


def _single_vertex() -> LatticeGraph:
    return LatticeGraph([(0, 0)], {}, False, None, "P_1")


def odd_diamond_plan(n: int, mode=Mode.CHARPOLY) -> DecompositionPlan:
    """OD_n ~ HOD_{n-1} + HOD_{n-1} + P_1 + Q_n + Q'_n (no explicit basis)."""
    g = build_family(F.ODD_DIAMOND, n)
    h = build_family(F.HALF_ODD, n - 1)
    blocks = [h, h, _single_vertex(), build_family(F.LOOP_Q, n), build_family(F.LOOP_QP, n)]
    if Mode.parse(mode) is Mode.EXPLICIT:
        raise DecompositionError("THM3_3 has no explicit basis; use charpoly or smith")
    return DecompositionPlan("THM3_3", n, g, blocks, None, mode)


def odd_diamond_split_plan(n: int, mode=Mode.EXPLICIT) -> DecompositionPlan:
    """The first step for OD_n: OD_n ~ HOD_{n-1} + marked HOD_n."""
    g = build_family(F.ODD_DIAMOND, n)
    split = lemma11_split(g, symmetry_map(g, "h"))
    h = build_family(F.HALF_ODD, n - 1)
    mh = build_family(F.MARKED_HOD, n)
    perm = _align(split.g_minus, mh, "G-")
    basis = _pull_back([SparseVector.basis(i) for i in range(mh.num_vertices)], perm)
    return DecompositionPlan("THM3_3_SPLIT", n, g, [h, mh],
                             [_ordered_plus(split, h), [split.lift_minus(b) for b in basis]], mode)


def pillowcase_plan(n: int, mode=Mode.CHARPOLY) -> DecompositionPlan:
    """AP_n ~ AD_{n-1} + AD_{n-1} + S_2n + S'_2n (no explicit basis)."""
    g = build_family(F.PILLOWCASE, n)
    a = build_family(F.AZTEC, n - 1)
    blocks = [a, a, build_family(F.BLOCK_S, 2 * n), build_family(F.BLOCK_SP, 2 * n)]
    if Mode.parse(mode) is Mode.EXPLICIT:
        raise DecompositionError("THM6_1 has no explicit basis; use charpoly or smith")
    return DecompositionPlan("THM6_1", n, g, blocks, None, mode)


def pillowcase_split_plan(n: int, mode=Mode.EXPLICIT) -> DecompositionPlan:
    """The first step for AP_n: swapping the two sheets gives AD_{n-1} + marked AD_n."""
    g = build_family(F.PILLOWCASE, n)
    split = lemma11_split(g, symmetry_map(g, "sheet"))
    a = build_family(F.AZTEC, n - 1)
    ma = build_family(F.MARKED_AD, n)
    gm = split.g_minus
    flat = LatticeGraph([p.coords[:2] for p in gm.points], gm.arcs, True, gm.marked, gm.label)
    perm = _align(flat, ma, "G-")
    basis = _pull_back([SparseVector.basis(i) for i in range(ma.num_vertices)], perm)
    plus = _ordered_plus(split, a) if a.num_vertices else []
    return DecompositionPlan("THM6_1_SPLIT", n, g, [a, ma],
                             [plus, [split.lift_minus(b) for b in basis]], mode)


THEOREMS = {
    "THM2_1": (grid_plan, Mode.EXPLICIT),
    "THM2_1_SPLIT": (grid_split_plan, Mode.EXPLICIT),
    "THM2_1_MARKED": (marked_qad_plan, Mode.EXPLICIT),
    "THM3_1": (mixed_diamond_plan, Mode.EXPLICIT),
    "THM3_1_MARKED": (marked_hmd_plan, Mode.EXPLICIT),
    "THM3_3": (odd_diamond_plan, Mode.CHARPOLY),
    "THM3_3_SPLIT": (odd_diamond_split_plan, Mode.EXPLICIT),
    "THM6_1": (pillowcase_plan, Mode.CHARPOLY),
    "THM6_1_SPLIT": (pillowcase_split_plan, Mode.EXPLICIT),
}


def parse_theorem(text: str) -> str:
    t = text.strip().upper().replace(".", "_").replace("-", "_")
    if not t.startswith("THM") and not t.startswith("LEMMA"):
        t = "THM" + t
    if t not in THEOREMS:
        raise DecompositionError(f"unknown theorem {text!r}; known: {', '.join(THEOREMS)}")
    return t


def theorem_plan(theorem: str, n: int, mode=None) -> DecompositionPlan:
    key = parse_theorem(theorem)
    builder, default = THEOREMS[key]
    return builder(n, Mode.parse(mode) if mode is not None else default)


def certify(theorem: str, n: int, mode=None) -> SimilarityCertificate:
    key = parse_theorem(theorem)
    m = Mode.parse(mode) if mode is not None else THEOREMS[key][1]
    try:
        plan = theorem_plan(key, n, m)
    except (DecompositionError, GraphError) as exc:
        return SimilarityCertificate(key, n, m, False, str(exc))
    return certify_similarity(plan)
