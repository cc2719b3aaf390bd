"""Exact spectra, spanning trees and perfect matchings of Aztec-type lattice graphs."""

from .closed_forms import FormulaId, eval_formula
from .decomposition import Mode, certify, lemma11_split, theorem_plan
from .families import FamilyId, build_family
from .graph import LatticeGraph, LatticePoint, parse, serialize
from .linalg import BigRationalMatrix, charpoly, determinant, smith_form_xI_minus_A, tree_count
from .matchings import count_invariant_matchings, count_matchings, factorization_split
from .poly import Poly
from .transforms import quotient_by_group, symmetry_map, temperley_refinement
from .trees import count_invariant_trees, symmetry_class_count, temperley_check
from .verify import check_formula, holes_count

__all__ = [
    "FormulaId", "eval_formula", "Mode", "certify", "lemma11_split", "theorem_plan",
    "FamilyId", "build_family", "LatticeGraph", "LatticePoint", "parse", "serialize",
    "BigRationalMatrix", "charpoly", "determinant", "smith_form_xI_minus_A", "tree_count",
    "count_invariant_matchings", "count_matchings", "factorization_split", "Poly",
    "quotient_by_group", "symmetry_map", "temperley_refinement", "count_invariant_trees",
    "symmetry_class_count", "temperley_check", "check_formula", "holes_count",
]
__version__ = "0.1.0"
