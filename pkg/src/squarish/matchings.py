"""Weighted perfect-matching counts.

``count_matchings`` sweeps the vertices in a lattice order.  The state is the
set of not-yet-processed vertices that are already matched to a processed
vertex; only vertices adjacent to the processed part can be in it, so the
state lives on the current frontier.  States are stored as a dense numpy
array with one axis of length 2 per frontier vertex, and the count is carried
modulo several primes and recovered by the Chinese remainder theorem from a
rigorous a priori bound.  Rational weights are cleared by a common
denominator L: M(G) = M(L G) / L^(|V|/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .graph import GraphError, LatticeGraph, position_key
from .poly import _norm
from .transforms import SymmetryError, SymmetryMap, is_automorphism, point_map, quotient_by_group

FRONTIER_CAP = 28
BRUTE_CAP = 20

# primes just below 2^58 and 2^31 (checked by _is_prime at import)
_BIG_PRIMES = []
_SMALL_PRIMES = []


class MatchingError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(limit: int, count: int) -> List[int]:
    out, k = [], limit - 1
    while len(out) < count:
        if _is_prime(k):
            out.append(k)
        k -= 2 if k % 2 else 1
    return out


def _big_primes(count: int) -> List[int]:
    while len(_BIG_PRIMES) < count:
        start = _BIG_PRIMES[-1] if _BIG_PRIMES else (1 << 58)
        _BIG_PRIMES.extend(_primes_below(start, 1))
    return _BIG_PRIMES[:count]


def _small_primes(count: int) -> List[int]:
    while len(_SMALL_PRIMES) < count:
        start = _SMALL_PRIMES[-1] if _SMALL_PRIMES else (1 << 31)
        _SMALL_PRIMES.extend(_primes_below(start, 1))
    return _SMALL_PRIMES[:count]


@dataclass(frozen=True)
class MatchingCount:
    value: Fraction

    def __int__(self) -> int:
        if self.value.denominator != 1:
            raise ValueError(f"matching count {self.value} is not an integer")
        return self.value.numerator

    def exact(self):
        return _norm(self.value)

    def __eq__(self, other):
        if isinstance(other, MatchingCount):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __str__(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# ---------------------------------------------------------------------------
# helpers

def _undirected_weights(g: LatticeGraph) -> Dict[Tuple[int, int], Fraction]:
    if g.directed:
        raise MatchingError("matching counts need an undirected graph")
    return {(u, v): Fraction(w) for (u, v), w in g.arcs.items() if u < v}


def _frontier_profile(order: Sequence[int], nbrs: List[List[int]]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    active = set()
    worst = 0
    for v in order:
        for u in nbrs[v]:
            if pos[u] > pos[v]:
                active.add(u)
        worst = max(worst, len(active) + (0 if v in active else 1))
        active.discard(v)
    return worst


def sweep_order(g: LatticeGraph) -> Tuple[List[int], int]:
    """Best of the lattice sweeps (x-major, y-major, and reversals)."""
    n = g.num_vertices
    nbrs = [[] for _ in range(n)]
    for (u, v) in g.arcs:
        if u != v:
            nbrs[u].append(v)
    cands = []
    coords = [p.coords for p in g.points]
    keys = [
        lambda v: position_key(coords[v]),
        lambda v: tuple(coords[v]),
        lambda v: tuple(reversed(coords[v])),
    ]
    if g.dimension() >= 2:
        keys.append(lambda v: (coords[v][0] + coords[v][1], coords[v][0]))
        keys.append(lambda v: (coords[v][0] - coords[v][1], coords[v][0]))
    for key in keys:
        o = sorted(range(n), key=key)
        cands.append(o)
        cands.append(o[::-1])
    best = None
    for o in cands:
        w = _frontier_profile(o, nbrs)
        if best is None or w < best[1]:
            best = (o, w)
    return best


def _log2_bound(n: int, wts: Dict[Tuple[int, int], int]) -> float:
    """log2 of an upper bound on |M(G)| for integer weights.

    For 0/1 weights: M(G)^2 <= per(A) <= prod_v (d_v!)^(1/d_v) (Bregman).
    Otherwise M(G)^2 <= per(|A|) <= prod_v (row sum of |A|)."""
    deg = [0] * n
    rows = [0] * n
    simple = True
    for (u, v), w in wts.items():
        deg[u] += 1
        deg[v] += 1
        rows[u] += abs(w)
        rows[v] += abs(w)
        if abs(w) != 1:
            simple = False
    total = 0.0
    for v in range(n):
        if deg[v] == 0:
            return -math.inf
        if simple:
            total += math.lgamma(deg[v] + 1) / math.log(2) / deg[v]
        else:
            total += math.log2(rows[v])
    return total / 2


def _dp_mod(order, nbr_w, p: int) -> int:
    """Frontier DP modulo p for integer weights (already reduced mod p)."""
    pos = {v: i for i, v in enumerate(order)}
    slots: List[int] = []
    arr = np.ones((), dtype=np.int64)
    for v in order:
        later = [(u, w) for u, w in nbr_w[v] if pos[u] > pos[v]]
        # give every later neighbour an axis
        for u, _ in later:
            if u not in slots:
                slots.append(u)
                arr = np.stack([arr, np.zeros_like(arr)], axis=-1)
        if v in slots:
            ax = slots.index(v)
            matched = np.take(arr, 1, axis=ax)
            free = np.take(arr, 0, axis=ax)
            slots.pop(ax)
        else:
            matched = None
            free = arr
        new = matched.copy() if matched is not None else np.zeros_like(free)
        for u, w in later:
            ax = slots.index(u)
            src = np.take(free, 0, axis=ax)
            idx = [slice(None)] * new.ndim
            idx[ax] = 1
            idx = tuple(idx)
            if w == 1:
                new[idx] = (new[idx] + src) % p
            else:
                new[idx] = (new[idx] + (src * w) % p) % p
        arr = new
        if arr.ndim and not arr.any():
            return 0
    return int(arr) % p


def count_matchings(g: LatticeGraph, frontier_cap: int = FRONTIER_CAP) -> MatchingCount:
    """Exact weighted perfect-matching count of an undirected graph (loops ignored)."""
    wts = _undirected_weights(g)
    wts = {e: w for e, w in wts.items() if e[0] != e[1]}
    n = g.num_vertices
    if n == 0:
        return MatchingCount(Fraction(1))
    if n % 2:
        return MatchingCount(Fraction(0))
    L = reduce(math.lcm, (w.denominator for w in wts.values()), 1)
    iw = {e: int(w * L) for e, w in wts.items()}
    order, width = sweep_order(g)
    if width > frontier_cap:
        raise MatchingError(f"frontier {width} exceeds cap {frontier_cap}")
    bound_bits = _log2_bound(n, iw)
    if bound_bits == -math.inf:
        return MatchingCount(Fraction(0))
    need_bits = int(math.ceil(bound_bits)) + 3  # sign and slack
    wmax = max((abs(w) for w in iw.values()), default=1)
    primes_fn = _big_primes if wmax <= 31 else _small_primes
    bits_per = 57 if wmax <= 31 else 30
    count = max(1, -(-need_bits // bits_per))
    primes = primes_fn(count)
    residues = []
    for p in primes:
        nbr_w = [[] for _ in range(n)]
        for (u, v), w in iw.items():
            nbr_w[u].append((v, w % p))
            nbr_w[v].append((u, w % p))
        residues.append(_dp_mod(order, nbr_w, p))
    value = _crt_signed(residues, primes)
    return MatchingCount(Fraction(value, L ** (n // 2)))


def _crt_signed(residues: Sequence[int], primes: Sequence[int]) -> int:
    M = 1
    x = 0
    for r, p in zip(residues, primes):
        # combine x mod M with r mod p
        t = ((r - x) * pow(M, -1, p)) % p
        x += M * t
        M *= p
    if x > M // 2:
        x -= M
    return x


def count_matchings_exact_dict(g: LatticeGraph) -> MatchingCount:
    """The same frontier sweep with exact rationals in a dict (independent of
    the modular arithmetic; used to cross-check small instances)."""
    wts = {e: w for e, w in _undirected_weights(g).items() if e[0] != e[1]}
    n = g.num_vertices
    if n % 2:
        return MatchingCount(Fraction(0))
    order, _ = sweep_order(g)
    pos = {v: i for i, v in enumerate(order)}
    nbr = [[] for _ in range(n)]
    for (u, v), w in wts.items():
        nbr[u].append((v, w))
        nbr[v].append((u, w))
    states: Dict[frozenset, Fraction] = {frozenset(): Fraction(1)}
    for v in order:
        nxt: Dict[frozenset, Fraction] = {}
        for st, val in states.items():
            if v in st:
                key = st - {v}
                nxt[key] = nxt.get(key, 0) + val
                continue
            for u, w in nbr[v]:
                if pos[u] > pos[v] and u not in st:
                    key = st | {u}
                    nxt[key] = nxt.get(key, 0) + val * w
        states = nxt
    return MatchingCount(Fraction(states.get(frozenset(), 0)))


def count_matchings_bruteforce(g: LatticeGraph, cap: int = BRUTE_CAP) -> MatchingCount:
    """Exhaustive recursion on the lowest-id unmatched vertex."""
    n = g.num_vertices
    if n > cap:
        raise MatchingError(f"brute force capped at {cap} vertices (got {n})")
    wts = {e: w for e, w in _undirected_weights(g).items() if e[0] != e[1]}
    nbr = [[] for _ in range(n)]
    for (u, v), w in wts.items():
        nbr[u].append((v, w))
        nbr[v].append((u, w))
    for lst in nbr:
        lst.sort()
    matched = [False] * n

    def rec(start: int) -> Fraction:
        v = start
        while v < n and matched[v]:
            v += 1
        if v == n:
            return Fraction(1)
        matched[v] = True
        total = Fraction(0)
        for u, w in nbr[v]:
            if not matched[u]:
                matched[u] = True
                total += w * rec(v + 1)
                matched[u] = False
        matched[v] = False
        return total

    if n % 2:
        return MatchingCount(Fraction(0))
    return MatchingCount(rec(0))


def enumerate_matchings(g: LatticeGraph, cap: int = 24) -> List[Tuple[Tuple[Tuple[int, int], ...], Fraction]]:
    """All perfect matchings with their weights (small graphs only)."""
    n = g.num_vertices
    if n > cap:
        raise MatchingError(f"matching enumeration capped at {cap} vertices (got {n})")
    wts = {e: w for e, w in _undirected_weights(g).items() if e[0] != e[1]}
    nbr = [[] for _ in range(n)]
    for (u, v), w in wts.items():
        nbr[u].append((v, w))
        nbr[v].append((u, w))
    for lst in nbr:
        lst.sort()
    out = []
    matched = [False] * n
    chosen: List[Tuple[int, int]] = []

    def rec(start: int, acc: Fraction):
        v = start
        while v < n and matched[v]:
            v += 1
        if v == n:
            out.append((tuple(chosen), acc))
            return
        matched[v] = True
        for u, w in nbr[v]:
            if not matched[u]:
                matched[u] = True
                chosen.append((v, u))
                rec(v + 1, acc * w)
                chosen.pop()
                matched[u] = False
        matched[v] = False

    if n % 2 == 0:
        rec(0, Fraction(1))
    return out


# ---------------------------------------------------------------------------
# Factorization Theorem

@dataclass(frozen=True)
class AxisSplit:
    g_plus: LatticeGraph
    g_minus: LatticeGraph
    k: int

    def predicted(self, count: Callable = None) -> Fraction:
        count = count or count_matchings
        return (2 ** self.k) * count(self.g_plus).value * count(self.g_minus).value


def split_by_sides(g: LatticeGraph, side: Sequence[int], axis_pos: Dict[int, object],
                   mirror: Optional[Sequence[int]] = None) -> AxisSplit:
    """Apply the split rules given which side of the axis each vertex is on
    (+1 above, 0 on the axis, -1 below) and the left-to-right position of the
    axis vertices.  ``mirror`` (the reflection, if known) is checked to be an
    automorphism swapping the sides and fixing the axis."""
    n = g.num_vertices
    if g.directed:
        raise MatchingError("factorization needs an undirected graph")
    if mirror is not None:
        if not is_automorphism(g, mirror):
            raise MatchingError("graph is not symmetric about the axis")
        for v in range(n):
            if side[mirror[v]] != -side[v]:
                raise MatchingError("reflection does not swap the two sides")
    for (u, v) in g.arcs:
        if side[u] * side[v] < 0:
            raise MatchingError("axis vertices do not form a cut set")
    axis = sorted((v for v in range(n) if side[v] == 0), key=lambda v: axis_pos[v])
    if len(axis) % 2:
        raise MatchingError("odd number of vertices on the axis")
    k = len(axis) // 2
    # proper colouring with a_1 white (0)
    color = [-1] * n
    adj = g.out_neighbors()
    starts = axis + list(range(n))
    for s in starts:
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w, _ in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    raise MatchingError("graph is not bipartite")
    is_a = {v: (i % 2 == 0) for i, v in enumerate(axis)}
    WHITE, BLACK = 0, 1
    # axis vertex goes up if (a and black) or (b and white)
    goes_up = {v: (color[v] == BLACK) if is_a[v] else (color[v] == WHITE) for v in axis}
    arcs = {}
    for (u, v), w in g.arcs.items():
        su, sv = side[u], side[v]
        if su == 0 and sv == 0:
            arcs[(u, v)] = Fraction(w) / 2
            continue
        if su == 0 or sv == 0:
            a, other = (u, v) if su == 0 else (v, u)
            s_other = side[other]
            if s_other > 0 and not goes_up[a]:
                continue  # rule (i)
            if s_other < 0 and goes_up[a]:
                continue  # rule (ii)
        arcs[(u, v)] = w
    gp = g.with_arcs(arcs)
    plus = [v for v in range(n) if side[v] > 0 or (side[v] == 0 and goes_up[v])]
    minus = [v for v in range(n) if side[v] < 0 or (side[v] == 0 and not goes_up[v])]
    label = g.label or "G"
    return AxisSplit(gp.induced(plus, label + "+"), gp.induced(minus, label + "-"), k)


def axis_frame(g: LatticeGraph, kind: str):
    """(side, axis position) functions for the reflection ``kind`` about g's
    bounding box, with the drawing rotated so that the axis is horizontal."""
    f = point_map(g, kind)
    box = [(min(p[k] for p in g.points), max(p[k] for p in g.points)) for k in range(2)]
    (x0, x1), (y0, y1) = box
    if kind == "h":
        c = y0 + y1
        return (lambda p: _sgn(2 * p[1] - c)), (lambda p: p[0]), f
    if kind == "v":
        c = x0 + x1
        return (lambda p: _sgn(c - 2 * p[0])), (lambda p: p[1]), f
    if kind == "diag":
        c = y0 - x0
        return (lambda p: _sgn(p[1] - p[0] - c)), (lambda p: p[0] + p[1]), f
    if kind == "antidiag":
        c = x0 + y1
        return (lambda p: _sgn(p[0] + p[1] - c)), (lambda p: p[0] - p[1]), f
    raise MatchingError(f"no reflection axis for symmetry kind {kind!r}")


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def factorization_split(g: LatticeGraph, axis) -> AxisSplit:
    """Split along the reflection axis of ``axis`` (a SymmetryMap or a kind)."""
    kind = axis.kind if isinstance(axis, SymmetryMap) else axis
    side_fn, pos_fn, f = axis_frame(g, kind)
    idx = g.index()
    mirror = []
    for p in g.points:
        img = idx.get(tuple(f(p.coords)))
        if img is None:
            raise MatchingError("graph is not symmetric about the axis")
        mirror.append(img)
    if isinstance(axis, SymmetryMap) and list(axis.permutation) != mirror:
        raise MatchingError("symmetry map does not match the coordinate reflection")
    side = [side_fn(p.coords) for p in g.points]
    pos = {v: pos_fn(g.points[v].coords) for v in range(g.num_vertices) if side[v] == 0}
    return split_by_sides(g, side, pos, mirror)


# ---------------------------------------------------------------------------
# invariant matchings

def _is_invariant(matching, perms) -> bool:
    es = {frozenset(e) for e in matching}
    return all(frozenset((p[u], p[v])) in es for p in perms for (u, v) in matching)


def count_invariant_matchings_bruteforce(g: LatticeGraph, generators: Sequence[SymmetryMap],
                                         cap: int = 24) -> Fraction:
    for gen in generators:
        if not is_automorphism(g, gen.permutation):
            raise SymmetryError(f"{gen.kind} is not an automorphism")
    perms = [gen.permutation for gen in generators]
    total = Fraction(0)
    for m, w in enumerate_matchings(g, cap):
        if _is_invariant(m, perms):
            total += w
    return total


def count_invariant_matchings(g: LatticeGraph, generators: Sequence[SymmetryMap],
                              brute_cap: int = 18) -> int:
    """Number of perfect matchings invariant under the group generated by
    ``generators``.

    Small graphs are handled by filtering all matchings.  Larger ones use a
    reduction: if some generator has fixed points, the fixed set must be
    matched along itself, and the rest splits into the two swapped halves
    (only for involutions with a fixed cut set); otherwise the free action
    gives a bijection with matchings of the orbit graph, provided no edge is
    flipped onto itself by a group element."""
    for gen in generators:
        if not is_automorphism(g, gen.permutation):
            raise SymmetryError(f"{gen.kind} is not an automorphism")
    if g.num_vertices <= brute_cap:
        return _as_int(count_invariant_matchings_bruteforce(g, generators, brute_cap))
    return _as_int(_invariant_by_reduction(g, list(generators)))


def _as_int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise MatchingError(f"invariant matching count {x} is not integral")
    return x.numerator


def _group_elements(n: int, generators: Sequence[SymmetryMap]) -> List[Tuple[int, ...]]:
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for gen in generators:
                c = tuple(gen.permutation[x] for x in e)
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(elems)


def _invariant_by_reduction(g: LatticeGraph, generators: List[SymmetryMap]) -> Fraction:
    n = g.num_vertices
    if n == 0:
        return Fraction(1)
    elems = _group_elements(n, generators)
    ident = tuple(range(n))
    # an involution with fixed points: fixed vertices must pair among themselves
    for gi, gen in enumerate(generators):
        fixed = [v for v in range(n) if gen.permutation[v] == v]
        if not fixed:
            continue
        if not gen.is_involution():
            raise MatchingError("reduction needs involutions when fixed points exist")
        fixed_set = set(fixed)
        # an edge {v, T v} with v not fixed is flipped onto itself: allowed
        # only across the fixed set, which is handled by the recursion below
        rest = [v for v in range(n) if v not in fixed_set]
        comps = g.induced(rest).components()
        # group the components into swapped pairs
        comp_sets = [frozenset(rest[i] for i in c) for c in comps]
        for c in comp_sets:
            img = frozenset(gen.permutation[v] for v in c)
            if img == c:
                raise MatchingError("fixed set does not separate the two halves")
        # a matching edge from a fixed vertex v to w forces the edge {v, T w}
        # as well, so invariant matchings pair fixed vertices among themselves
        # and split as G[fixed] times an invariant matching of G[rest]
        fixed_graph = g.induced(fixed)
        others = [h for h in generators if h is not gen]
        f_sub = _restrict_generators(g, fixed, others)
        m_fixed = _invariant_by_reduction(fixed_graph, f_sub) if f_sub else count_matchings(fixed_graph).value
        if m_fixed == 0:
            return Fraction(0)
        # invariant matchings of G[rest] under gen are matchings of one half
        # (choose the half containing the smallest vertex of each pair) with
        # the other generators acting on pairs of halves
        half = _pick_half(comp_sets, gen)
        half_graph = g.induced(sorted(half))
        if not others:
            m_rest = count_matchings(half_graph).value
        else:
            # remaining generators act on the halves; project them through gen
            proj = []
            hl = sorted(half)
            hpos = {v: i for i, v in enumerate(hl)}
            for h in others:
                perm = []
                for v in hl:
                    w = h.permutation[v]
                    if w not in hpos:
                        w = gen.permutation[w]
                    perm.append(hpos[w])
                proj.append(SymmetryMap(tuple(perm), h.kind))
            m_rest = _invariant_by_reduction(half_graph, proj)
        return m_fixed * m_rest
    # free action: check no element flips an edge
    for e in elems:
        if e == ident:
            continue
        for (u, v) in g.arcs:
            if u < v and e[u] == v and e[v] == u:
                raise MatchingError("a group element flips an edge; quotient reduction invalid")
    q = quotient_by_group(g, generators)
    if q.directed:
        raise MatchingError("orbit graph is directed")
    return count_matchings(q).value


def _restrict_generators(g: LatticeGraph, keep: Sequence[int], gens: Sequence[SymmetryMap]):
    pos = {v: i for i, v in enumerate(keep)}
    out = []
    for h in gens:
        if any(h.permutation[v] not in pos for v in keep):
            raise MatchingError("generator does not preserve the fixed set")
        out.append(SymmetryMap(tuple(pos[h.permutation[v]] for v in keep), h.kind))
    return out


def _pick_half(comp_sets, gen) -> set:
    half = set()
    used = set()
    for c in sorted(comp_sets, key=min):
        if c in used:
            continue
        img = frozenset(gen.permutation[v] for v in c)
        used.add(c)
        used.add(img)
        half |= c
    return half
