from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from squarish.families import FamilyId, build_family, expected_vertex_count
from squarish.graph import GraphError, ParseError, canonical_form, parse, serialize
from squarish.linalg import charpoly
from squarish.poly import Poly
from squarish.transforms import (SymmetryError, inner_dual, is_lattice_isomorphic,
                                 quotient_by_group, symmetry_map, temperley_refinement)

from conftest import connected_grid_subgraphs, grid_subgraph

F = FamilyId


def test_aztec_1_is_four_cycle():
    g = build_family(F.AZTEC, 1)
    assert g.num_vertices == 4 and g.num_edges() == 4
    assert all(len(g.neighbors(v)) == 2 for v in range(4))


def test_quartered_5_has_15_vertices():
    assert build_family(F.QUARTERED, 5).num_vertices == 15


def test_odd_diamond_1_is_star():
    g = build_family(F.ODD_DIAMOND, 1)
    assert g.num_vertices == 5
    assert sorted(len(g.neighbors(v)) for v in range(5)) == [1, 1, 1, 1, 4]


def test_pillowcase_1_spectrum():
    g = build_family(F.PILLOWCASE, 1)
    assert g.num_vertices == 4
    assert all(w == 2 for (_u, _v, w) in g.edges())
    assert charpoly(g.adjacency()) == Poly.from_roots([4, 0, 0, -4])


def test_holed_square_2():
    assert build_family(F.HOLED_SQUARE, 2).num_vertices == 24


def test_path_families():
    assert charpoly(build_family(F.PATH_Q, 2, q=2).adjacency()) == Poly([-4, 0, 1])
    g = build_family(F.LOOP_R, 1)
    assert g.num_vertices == 1 and g.weight(0, 0) == 1
    s = build_family(F.BLOCK_S, 2).adjacency()
    assert [[s[i, j] for j in range(2)] for i in range(2)] == [[0, 0], [2, 4]]
    assert charpoly(s) == Poly([0, -4, 1])


@pytest.mark.parametrize("fam", [F.GRID, F.AZTEC, F.QUARTERED, F.ODD_DIAMOND, F.MIXED_DIAMOND,
                                 F.HALF_ODD, F.HALF_MIXED, F.HOLED_SQUARE, F.PILLOWCASE])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_vertex_counts(fam, n):
    want = expected_vertex_count(fam, n)
    if want is not None:
        assert build_family(fam, n).num_vertices == want


@pytest.mark.parametrize("fam", list(FamilyId))
def test_serialize_roundtrip(fam):
    g = build_family(fam, 2, q=Fraction(3, 2) if fam is F.PATH_Q else None,
                     d=3 if fam is F.GRID_D else None)
    assert parse(serialize(g)) == g


def test_parse_reports_position():
    with pytest.raises(ParseError) as exc:
        parse("graph undirected 1\nv 0 0 0\na 0 0 x/y\n")
    assert "3" in str(exc.value)


def test_bad_family_and_order():
    with pytest.raises(GraphError):
        FamilyId.parse("NOPE")
    with pytest.raises(GraphError):
        build_family(F.GRID, -1)


def test_refinement_counts():
    assert temperley_refinement(build_family(F.GRID, 2)).num_vertices == 9
    assert temperley_refinement(grid_subgraph([(0, 0), (1, 0)])).num_vertices == 3
    assert temperley_refinement(build_family(F.QUARTERED, 3)).num_vertices == 13


def test_inner_dual():
    assert inner_dual(build_family(F.GRID, 3)).num_vertices == 4


@pytest.mark.parametrize("n", range(4, 9))
def test_dual_of_quartered(n):
    assert canonical_form(inner_dual(build_family(F.QUARTERED, n))) == \
        canonical_form(build_family(F.QUARTERED, n - 2))


@pytest.mark.parametrize("n", range(3, 7))
def test_dual_of_half_mixed(n):
    assert is_lattice_isomorphic(inner_dual(build_family(F.HALF_MIXED, n)),
                                 build_family(F.HALF_ODD, n - 2))


def test_symmetry_maps():
    r = symmetry_map(build_family(F.AZTEC, 2), "r")
    assert r.order() == 4 and not r.fixed()
    assert len(symmetry_map(build_family(F.GRID, 3), "diag").fixed()) == 3
    with pytest.raises(SymmetryError):
        symmetry_map(build_family(F.MIXED_DIAMOND, 2), "r")


def test_quotient_of_eight_cycle():
    h = build_family(F.HOLED_SQUARE, 1)
    q = quotient_by_group(h, [symmetry_map(h, "r2")])
    assert q.num_vertices == 4 and q.is_connected()
    assert all(len(q.neighbors(v)) == 2 for v in range(4))


def test_quotient_with_fixed_points():
    c4 = build_family(F.AZTEC, 1)
    q = quotient_by_group(c4, [symmetry_map(c4, "diag")])
    assert q.num_vertices == 3


@given(connected_grid_subgraphs())
def test_canonical_form_invariant_under_symmetries(g):
    from squarish.graph import LatticeGraph, LatticePoint
    for k in range(1, 8):
        from squarish.graph import _dihedral
        moved = LatticeGraph([LatticePoint(_dihedral(p.coords, k)) for p in g.points],
                             g.arcs, g.directed, g.marked, g.label)
        assert canonical_form(moved) == canonical_form(g)
