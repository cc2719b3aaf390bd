"""Independent-route cross-checks: Matrix-Tree against enumeration, the
frontier DP against brute force, and the Temperley bijection."""

import networkx as nx
import pytest

from squarish.families import FamilyId, build_family
from squarish.linalg import tree_count
from squarish.matchings import count_matchings, count_matchings_bruteforce
from squarish.trees import count_trees_by_enumeration, temperley_check
from squarish.transforms import outer_boundary_vertices

from conftest import random_connected_subgraphs

F = FamilyId

SMALL_FAMILY_CASES = [(fam, n) for fam in (F.GRID, F.AZTEC, F.QUARTERED, F.ODD_DIAMOND,
                                           F.MIXED_DIAMOND, F.HALF_ODD, F.HALF_MIXED,
                                           F.ZIGZAG_A, F.ZIGZAG_B, F.ZIGZAG_C, F.ZIGZAG_D,
                                           F.HOLED_SQUARE, F.PILLOWCASE)
                      for n in range(1, 5)
                      if build_family(fam, n).num_vertices <= 8]


@pytest.mark.parametrize("fam,n", SMALL_FAMILY_CASES)
def test_matrix_tree_vs_enumeration_families(fam, n):
    g = build_family(fam, n)
    assert tree_count(g) == count_trees_by_enumeration(g)


def test_matrix_tree_vs_enumeration_random():
    for g in random_connected_subgraphs(100, seed=7, size=(3, 8)):
        assert tree_count(g) == count_trees_by_enumeration(g)


def test_matrix_tree_vs_networkx():
    for g in random_connected_subgraphs(30, seed=3, width=5, height=5, size=(6, 20)):
        h = nx.Graph()
        h.add_nodes_from(range(g.num_vertices))
        h.add_edges_from((u, v) for u, v, _ in g.edges())
        assert tree_count(g) == round(nx.number_of_spanning_trees(h))


def test_dp_vs_bruteforce_random():
    gs = random_connected_subgraphs(200, seed=11, width=5, height=4, size=(4, 20))
    for g in gs:
        assert count_matchings(g) == count_matchings_bruteforce(g)


def test_temperley_many_instances():
    checked = 0
    for fam in (F.GRID, F.AZTEC, F.QUARTERED, F.HALF_ODD, F.HALF_MIXED, F.ODD_DIAMOND,
                F.MIXED_DIAMOND, F.ZIGZAG_A, F.ZIGZAG_D):
        for n in range(1, 4):
            g = build_family(fam, n)
            for v in outer_boundary_vertices(g)[:2]:
                assert temperley_check(g, v)
                checked += 1
    assert checked >= 50
