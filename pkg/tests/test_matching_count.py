from fractions import Fraction

import pytest
from hypothesis import given

from squarish.closed_forms import eval_formula
from squarish.families import FamilyId, build_family
from squarish.graph import LatticeGraph, LatticePoint
from squarish.matchings import (MatchingError, count_invariant_matchings,
                                count_invariant_matchings_bruteforce, count_matchings,
                                count_matchings_bruteforce, factorization_split)
from squarish.transforms import symmetry_map

from conftest import connected_grid_subgraphs, grid_subgraph, symmetric_grid_subgraphs

F = FamilyId


def test_holed_square_small_values():
    assert count_matchings(build_family(F.HOLED_SQUARE, 1)) == 2
    assert count_matchings(build_family(F.HOLED_SQUARE, 2)) == 196
    assert count_matchings(build_family(F.GRID, 2)) == 2


def test_weighted_zigzag():
    want, _ = eval_formula("EQ5_1", 1)
    assert count_matchings(build_family(F.ZIGZAG_A_TILDE, 1)).value == Fraction(want)
    assert count_matchings_bruteforce(build_family(F.ZIGZAG_A_TILDE, 1)).value == Fraction(want)


def test_bruteforce_examples():
    edge = grid_subgraph([(0, 0), (1, 0)])
    assert count_matchings_bruteforce(edge) == 1
    c6 = grid_subgraph([(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)])
    assert count_matchings_bruteforce(c6) == 3  # 2x3 grid
    ring = LatticeGraph([LatticePoint((2 * i, 0)) for i in range(6)],
                        {**{(i, (i + 1) % 6): 1 for i in range(6)},
                         **{((i + 1) % 6, i): 1 for i in range(6)}}, False, None, "C6")
    assert count_matchings_bruteforce(ring) == 2
    g34 = grid_subgraph([(i, j) for i in range(4) for j in range(3)])
    assert count_matchings_bruteforce(g34) == 11
    assert count_matchings(g34) == 11


def test_brute_force_cap():
    with pytest.raises(MatchingError):
        count_matchings_bruteforce(build_family(F.GRID, 6))


@given(connected_grid_subgraphs(width=5, height=4, max_size=16))
def test_dp_matches_bruteforce(g):
    assert count_matchings(g) == count_matchings_bruteforce(g)


@given(symmetric_grid_subgraphs())
def test_factorization_identity_on_random_symmetric(g):
    try:
        s = factorization_split(g, "v")
    except MatchingError:
        return  # axis not a cut set, odd axis, or not bipartite-consistent
    assert count_matchings(g).value == s.predicted()


@pytest.mark.parametrize("n,kinds,want", [(1, ("r2",), 2), (2, ("h", "v"), 2), (1, ("h",), 0)])
def test_invariant_matching_examples(n, kinds, want):
    h = build_family(F.HOLED_SQUARE, n)
    gens = [symmetry_map(h, k) for k in kinds]
    assert count_invariant_matchings(h, gens) == want
    assert count_invariant_matchings_bruteforce(h, gens) == want


@pytest.mark.parametrize("n,kinds", [(2, ("h",)), (2, ("r2",)), (2, ("r",)), (3, ("r2",))])
def test_reduction_matches_filtering(n, kinds):
    h = build_family(F.HOLED_SQUARE, n)
    gens = [symmetry_map(h, k) for k in kinds]
    assert count_invariant_matchings(h, gens, brute_cap=0) == \
        count_invariant_matchings_bruteforce(h, gens, 48)


def test_grid_diagonal_split_gives_zigzag_b():
    g = build_family(F.GRID, 2)
    s = factorization_split(g, "diag")
    assert s.k == 1
    assert count_matchings(s.g_plus) == count_matchings(build_family(F.ZIGZAG_B, 1)) == 1
