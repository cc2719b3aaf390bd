from fractions import Fraction

import pytest
from hypothesis import given

from squarish.decomposition import (DecompositionError, DecompositionPlan, Mode, SparseVector,
                                    build_section2_vectors, build_section3_hmd_vectors, certify,
                                    certify_similarity, lemma11_plan, lemma11_split,
                                    parse_theorem, theorem_plan, verify_f_action)
from squarish.families import FamilyId, build_family
from squarish.linalg import charpoly
from squarish.poly import Poly
from squarish.transforms import is_lattice_isomorphic, symmetry_map

from conftest import grid_subgraph, symmetric_grid_subgraphs

F = FamilyId


def test_sparse_vector_algebra():
    a = SparseVector({0: Fraction(1, 2), 2: 1})
    b = SparseVector({0: Fraction(1, 2)})
    assert (a - b) == SparseVector({2: 1})
    assert (a - a).support() == []
    assert a.scale(2)[0] == 1


def test_path_end_swap():
    p3 = grid_subgraph([(0, 0), (1, 0), (2, 0)])
    s = lemma11_split(p3, [2, 1, 0])
    assert s.g_plus.num_vertices == 1
    assert s.g_minus.num_vertices == 2 and s.g_minus.directed
    assert charpoly(s.g_plus.adjacency()) * charpoly(s.g_minus.adjacency()) == Poly([0, -2, 0, 1])
    assert certify_similarity(s.plan()).passed


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_grid_diagonal_split_pieces(n):
    g = build_family(F.GRID, n)
    s = lemma11_split(g, symmetry_map(g, "diag"))
    assert is_lattice_isomorphic(s.g_plus, build_family(F.QUARTERED, n - 1))
    assert is_lattice_isomorphic(s.g_minus, build_family(F.MARKED_QAD, n))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pillowcase_split_pieces(n):
    g = build_family(F.PILLOWCASE, n)
    s = lemma11_split(g, symmetry_map(g, "sheet"))
    if n > 1:
        assert is_lattice_isomorphic(s.g_plus, build_family(F.AZTEC, n - 1))
    else:
        assert s.g_plus.num_vertices == 0


def test_split_errors():
    g = build_family(F.GRID, 3)
    with pytest.raises(DecompositionError, match="not an involution"):
        lemma11_split(g, symmetry_map(g, "r").permutation)
    with pytest.raises(DecompositionError, match="automorphism"):
        lemma11_split(g, [1, 0] + list(range(2, 9)))
    c4 = build_family(F.AZTEC, 1)
    with pytest.raises(DecompositionError, match="separate"):
        lemma11_split(c4, symmetry_map(c4, "h"))


@given(symmetric_grid_subgraphs())
def test_involution_split_charpoly_product(g):
    t = symmetry_map(g, "v")
    try:
        s = lemma11_split(g, t)
    except DecompositionError:
        return  # the fixed column does not separate the halves
    lhs = charpoly(g.adjacency())
    rhs = charpoly(s.g_plus.adjacency()) if s.g_plus.num_vertices else Poly([1])
    if s.g_minus.num_vertices:
        rhs = rhs * charpoly(s.g_minus.adjacency())
    assert lhs == rhs
    assert verify_f_action(s.plan()).ok


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_section2_vectors_f_action(n):
    assert verify_f_action(theorem_plan("THM2_1_MARKED", n)).ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_section3_vectors_f_action(n):
    assert verify_f_action(theorem_plan("THM3_1_MARKED", n)).ok


@pytest.mark.parametrize("thm,n", [("THM2_1", 3), ("THM2_1_SPLIT", 4), ("THM3_1", 3),
                                   ("THM3_3_SPLIT", 3), ("THM6_1_SPLIT", 2)])
def test_explicit_certificates(thm, n):
    c = certify(thm, n)
    assert c.passed, c.line()


@pytest.mark.parametrize("mode", ["charpoly", "smith"])
@pytest.mark.parametrize("thm,n", [("THM3_3", 2), ("THM6_1", 1), ("THM2_1", 3)])
def test_other_modes(thm, n, mode):
    assert certify(thm, n, mode).passed


def test_smith_above_cap_is_skipped():
    c = certify("THM2_1", 7, "smith")
    assert c.passed is None and not c.failed
    assert c.line().startswith("CERT THM2_1 7 smith-form SKIP")


def test_wrong_blocks_fail():
    g = build_family(F.GRID, 3)
    q = build_family(F.QUARTERED, 2)
    bad = DecompositionPlan("X", 3, g, [q, q, build_family(F.PATH_Q, 3, q=1)], None,
                            Mode.CHARPOLY)
    c = certify_similarity(bad)
    assert c.failed and "FAIL" in c.line()


def test_explicit_without_basis_is_rejected():
    assert certify("THM3_3", 2, "explicit").failed


def test_theorem_names():
    assert parse_theorem("2.1") == "THM2_1"
    assert parse_theorem("thm6_1_split") == "THM6_1_SPLIT"
    with pytest.raises(DecompositionError):
        parse_theorem("9.9")


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_section_vector_counts(n):
    s2 = build_section2_vectors(n)
    assert len(s2.v) == build_family(F.QUARTERED, n - 1).num_vertices
    assert len(s2.w) == n
    assert len(s2.v) + len(s2.w) == s2.graph.num_vertices
    s3 = build_section3_hmd_vectors(n)
    assert len(s3.f) == build_family(F.HALF_MIXED, n - 1).num_vertices
    assert len(s3.g) == len(s3.g_prime) == n
    assert len(s3.f) + 2 * n == s3.graph.num_vertices
