"""Exact-arithmetic permutation polytopes.

Build the polytope of a permutation group, enumerate its faces exactly,
decide stable and effective equivalence of permutation representations, and
re-verify the low-dimensional classification tables.
"""

from .groups import (
    PermRepresentation,
    PermutationGroup,
    embed_product,
    generate_group,
    group_from_cycle_strings,
    is_indecomposable,
    isomorphisms,
    pyramid_group,
    regular_representation,
    subelements,
)
from .perms import Permutation, from_cycles, identity, parse_cycles
from .permutation_polytope import (
    AffineKernel,
    F2Subspace,
    PermPolytope,
    affine_kernel,
    affinely_equivalent_polytopes,
    build,
    canonical_crosspolytope_group,
    canonical_cube_group,
    canonical_group,
    central_symmetry_data,
    constr_face,
    dimension,
    edge_graph,
    effectively_equivalent,
    face_from_subset,
    facet_complement_check,
    free_sum_double,
    is_simplex,
    product_decompositions,
    simple_polytope_check,
    smallest_face_pair,
    stably_equivalent,
    subgroup_face_test,
)
from .vpolytope import (
    FaceLattice,
    VPolytope,
    affine_project,
    affinely_equivalent,
    combinatorially_isomorphic,
    facet_enumeration,
    lattice_index,
    lattice_isomorphisms,
)
from .reference import constructed_lattice, reference_lattice

__version__ = "0.1.0"

__all__ = [
    "AffineKernel",
    "F2Subspace",
    "FaceLattice",
    "PermPolytope",
    "PermRepresentation",
    "Permutation",
    "PermutationGroup",
    "VPolytope",
    "affine_kernel",
    "affine_project",
    "affinely_equivalent",
    "affinely_equivalent_polytopes",
    "build",
    "canonical_crosspolytope_group",
    "canonical_cube_group",
    "canonical_group",
    "central_symmetry_data",
    "combinatorially_isomorphic",
    "constr_face",
    "constructed_lattice",
    "dimension",
    "edge_graph",
    "effectively_equivalent",
    "embed_product",
    "face_from_subset",
    "facet_complement_check",
    "facet_enumeration",
    "free_sum_double",
    "from_cycles",
    "generate_group",
    "group_from_cycle_strings",
    "identity",
    "is_indecomposable",
    "is_simplex",
    "isomorphisms",
    "lattice_index",
    "lattice_isomorphisms",
    "parse_cycles",
    "product_decompositions",
    "pyramid_group",
    "reference_lattice",
    "regular_representation",
    "simple_polytope_check",
    "smallest_face_pair",
    "stably_equivalent",
    "subelements",
    "subgroup_face_test",
]
