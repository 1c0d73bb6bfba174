"""Exact experiments on products of cyclic subgroups of matrix groups over number fields."""

from .errors import BoundGenError
from .qarith import NFElem, NumberField, UPoly, embeddings, nf_new, rationals
from .nflinalg import NFMatrix, eigenvalues_in_field, jordan_chevalley, minpoly
from .multrel import MultGroup, is_multiplicatively_independent, is_root_of_unity, relation_lattice
from .exppoly import MPoly, build_case1_poly, build_case2_poly, resultant_z
from .bglab import compute_J, laurent_enumerate, select_truncation, theorem41_pipeline

__all__ = [
    "BoundGenError", "NFElem", "NumberField", "UPoly", "embeddings", "nf_new", "rationals",
    "NFMatrix", "eigenvalues_in_field", "jordan_chevalley", "minpoly",
    "MultGroup", "is_multiplicatively_independent", "is_root_of_unity", "relation_lattice",
    "MPoly", "build_case1_poly", "build_case2_poly", "resultant_z",
    "compute_J", "laurent_enumerate", "select_truncation", "theorem41_pipeline",
]
