import pytest
from hypothesis import given

from squarish.families import FamilyId, build_family
from squarish.graph import GraphError
from squarish.linalg import tree_count
from squarish.trees import (CapExceeded, OpenProblemError, TreeError, count_invariant_trees,
                            count_trees_by_enumeration, enumerate_trees, symmetry_class_count,
                            temperley_check)
from squarish.transforms import outer_boundary_vertices, symmetry_map

from conftest import connected_grid_subgraphs, grid_subgraph

F = FamilyId


def test_enumeration_examples():
    assert len(enumerate_trees(build_family(F.AZTEC, 1))) == 4
    assert count_trees_by_enumeration(build_family(F.QUARTERED, 3)) == 4
    for t in enumerate_trees(build_family(F.QUARTERED, 3)):
        assert len(t.edges) == 5


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_trees(build_family(F.GRID, 4))


@given(connected_grid_subgraphs(width=4, height=3, max_size=10))
def test_matrix_tree_matches_enumeration(g):
    assert tree_count(g) == count_trees_by_enumeration(g)


def test_invariant_tree_examples():
    ad = build_family(F.AZTEC, 1)
    assert count_invariant_trees(ad, [symmetry_map(ad, "h")]) == 2
    assert count_invariant_trees(ad, [symmetry_map(ad, "h"), symmetry_map(ad, "v")]) == 0
    od = build_family(F.ODD_DIAMOND, 1)
    assert count_invariant_trees(od, [symmetry_map(od, "h"), symmetry_map(od, "v")]) == 1


def test_symmetry_class_examples():
    assert symmetry_class_count(F.AZTEC, 1, "h").value == 2
    assert symmetry_class_count(F.ODD_DIAMOND, 1, "hv").value == 1
    assert symmetry_class_count(F.MIXED_DIAMOND, 1, "hv").value == 1
    c = symmetry_class_count(F.AZTEC, 2, "hv")
    assert c.value == 0 and c.provably_empty


@pytest.mark.parametrize("fam,group", [(F.ODD_DIAMOND, "r"), (F.ODD_DIAMOND, "r2"),
                                       (F.MIXED_DIAMOND, "r2")])
def test_open_problems_raise(fam, group):
    with pytest.raises(OpenProblemError, match="no closed form"):
        symmetry_class_count(fam, 2, group)


def test_temperley_examples():
    g2 = build_family(F.GRID, 2)
    assert temperley_check(g2, 0)
    q4 = build_family(F.QUARTERED, 4)
    assert all(temperley_check(q4, v) for v in outer_boundary_vertices(q4))
    edge = grid_subgraph([(0, 0), (1, 0)])
    assert temperley_check(edge, 0) and temperley_check(edge, 1)


def test_temperley_rejects_interior_vertex():
    g = build_family(F.GRID, 3)
    centre = g.vertex_at((2, 2))
    with pytest.raises(TreeError):
        temperley_check(g, centre)


def test_temperley_rejects_holes():
    with pytest.raises(GraphError):
        temperley_check(build_family(F.HOLED_SQUARE, 2), 0)


@given(connected_grid_subgraphs(width=4, height=4, max_size=12))
def test_temperley_on_random_simply_connected(g):
    try:
        vs = outer_boundary_vertices(g)
        assert temperley_check(g, vs[0])
    except GraphError:
        pass  # the region has a hole, Temperley's bijection does not apply
