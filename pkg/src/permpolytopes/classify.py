"""Verification harness for the low-dimensional classification tables.

``verify_table1`` rebuilds each of the 14 listed groups, checks order,
dimension, and face-lattice type, and recomputes the full pairwise
effective-equivalence matrix.  ``build_face_case`` realizes the explicit
constructions behind the list of 4-dimensional face types and compares each
against its reference lattice by exact combinatorial isomorphism.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .errors import UnknownNameError
from .groups import (
    PermutationGroup,
    embed_product,
    generate_group,
    group_from_cycle_strings,
    pyramid_group,
)
from .perms import Permutation, from_cycles, parse_cycles
from .permutation_polytope import (
    PermPolytope,
    affinely_equivalent_polytopes,
    canonical_crosspolytope_group,
    constr_face,
    dimension,
    effectively_equivalent,
    face_from_subset,
    smallest_face_pair,
)
from .reference import (
    TABLE1_TYPE_LATTICES,
    bipyramid_lattice,
    crosspolytope_lattice,
    cube_lattice,
    prism_lattice,
    pyramid_lattice,
    reference_lattice,
    wedge_lattice,
)
from .vpolytope import FaceLattice, combinatorially_isomorphic, lattice_isomorphisms


@dataclass(frozen=True)
class Table1Row:
    type_name: str
    iso_type: str
    degree: int
    generators: tuple[str, ...]
    order: int
    dim: int


TABLE1_ROWS: tuple[Table1Row, ...] = (
    Table1Row("triangle", "Z/3", 3, ("(1 2 3)",), 3, 2),
    Table1Row("square", "(Z/2)^2", 4, ("(1 2)", "(3 4)"), 4, 2),
    Table1Row("tetrahedron", "Z/4", 4, ("(1 2 3 4)",), 4, 3),
    Table1Row("tetrahedron", "(Z/2)^2", 4, ("(1 2)(3 4)", "(1 3)(2 4)"), 4, 3),
    Table1Row("triangular prism", "Z/6", 5, ("(1 2)", "(3 4 5)"), 6, 3),
    Table1Row("cube", "(Z/2)^3", 6, ("(1 2)", "(3 4)", "(5 6)"), 8, 3),
    Table1Row("4-simplex", "Z/5", 5, ("(1 2 3 4 5)",), 5, 4),
    Table1Row("B_3", "S_3", 3, ("(1 2)", "(1 2 3)"), 6, 4),
    Table1Row("prism over tetrahedron", "Z/2 x Z/4", 6,
              ("(1 2 3 4)", "(5 6)"), 8, 4),
    Table1Row("prism over tetrahedron", "(Z/2)^3", 6,
              ("(1 2)(3 4)", "(1 3)(2 4)", "(5 6)"), 8, 4),
    Table1Row("4-crosspolytope", "(Z/2)^3", 8,
              ("(1 2)(3 4)", "(3 4)(7 8)", "(5 6)(7 8)"), 8, 4),
    Table1Row("product of triangles", "(Z/3)^2", 6, ("(1 2 3)", "(4 5 6)"), 9, 4),
    Table1Row("prism over triangular prism", "Z/6 x Z/2", 7,
              ("(1 2)", "(3 4 5)", "(6 7)"), 12, 4),
    Table1Row("4-cube", "(Z/2)^4", 8, ("(1 2)", "(3 4)", "(5 6)", "(7 8)"), 16, 4),
)


def table1_group(row: Table1Row) -> PermutationGroup:
    return group_from_cycle_strings(row.generators, row.degree)


@dataclass
class RowVerdict:
    row: Table1Row
    order: int
    dim: int
    f_vector: tuple[int, ...]
    order_ok: bool
    dim_ok: bool
    lattice_ok: bool
    seconds: float

    @property
    def passed(self) -> bool:
        return self.order_ok and self.dim_ok and self.lattice_ok


@dataclass
class Table1Report:
    verdicts: list[RowVerdict]
    equivalence_matrix: list[list[bool]]
    matrix_ok: bool
    affine_pairs_ok: bool
    seconds: float

    @property
    def passed(self) -> bool:
        return (all(v.passed for v in self.verdicts)
                and self.matrix_ok and self.affine_pairs_ok)

    def to_json_dict(self, with_timings: bool = False) -> dict:
        out = {
            "rows": [
                {
                    "type": v.row.type_name,
                    "iso_type": v.row.iso_type,
                    "generators": list(v.row.generators),
                    "order": v.order,
                    "dim": v.dim,
                    "f_vector": list(v.f_vector),
                    "passed": v.passed,
                }
                for v in self.verdicts
            ],
            "effective_equivalence_matrix": self.equivalence_matrix,
            "matrix_ok": self.matrix_ok,
            "affine_pairs_ok": self.affine_pairs_ok,
            "passed": self.passed,
        }
        if with_timings:
            out["seconds"] = round(self.seconds, 3)
            for v, row_out in zip(self.verdicts, out["rows"]):
                row_out["seconds"] = round(v.seconds, 3)
        return out


def verify_table1() -> Table1Report:
    """Re-verify every row of the dimension <= 4 classification table."""
    t_start = time.monotonic()
    verdicts = []
    groups = []
    for row in TABLE1_ROWS:
        t0 = time.monotonic()
        group = table1_group(row)
        groups.append(group)
        poly = PermPolytope(group)
        lattice = poly.face_lattice()
        reference = TABLE1_TYPE_LATTICES[row.type_name]()
        verdicts.append(RowVerdict(
            row=row,
            order=group.order,
            dim=poly.dim,
            f_vector=lattice.f_vector,
            order_ok=group.order == row.order,
            dim_ok=poly.dim == row.dim,
            lattice_ok=combinatorially_isomorphic(lattice, reference) is not None,
            seconds=time.monotonic() - t0,
        ))
    matrix = []
    for i, gi in enumerate(groups):
        line = []
        for j, gj in enumerate(groups):
            if j < i:
                line.append(matrix[j][i])
            else:
                line.append(effectively_equivalent(gi, gj) is not None)
        matrix.append(line)
    # the table is irredundant: equivalent exactly on the diagonal
    matrix_ok = all(matrix[i][j] == (i == j)
                    for i in range(len(groups)) for j in range(len(groups)))
    # the two tetrahedron rows and the two prism-over-tetrahedron rows carry
    # affinely equivalent polytopes despite non-isomorphic groups
    affine_pairs_ok = True
    for i, j in ((2, 3), (8, 9)):
        pi, pj = PermPolytope(groups[i]), PermPolytope(groups[j])
        affine_pairs_ok &= affinely_equivalent_polytopes(pi, pj) is not None
        affine_pairs_ok &= next(lattice_isomorphisms(
            pi.face_lattice(), pj.face_lattice()), None) is not None
    return Table1Report(verdicts, matrix, matrix_ok, affine_pairs_ok,
                        time.monotonic() - t_start)


# -- explicit face constructions ---------------------------------------------------

def _disjoint_three_cycles(count: int, degree: int) -> list[Permutation]:
    return [from_cycles([tuple(range(3 * i + 1, 3 * i + 4))], degree)
            for i in range(count)]


def _swap_blocks(first: int, second: int, degree: int) -> Permutation:
    """Involution exchanging the 3-cycles on blocks first and second (1-based)."""
    a, b = 3 * (first - 1), 3 * (second - 1)
    return from_cycles([(a + 1, b + 1), (a + 2, b + 2), (a + 3, b + 3)], degree)


@dataclass
class FaceCase:
    name: str
    expected_group_order: int
    build: Callable[[], tuple[PermutationGroup, list[Permutation]]]
    reference: Callable[[], FaceLattice]


def _case_dual_w():
    n = 24
    a = _disjoint_three_cycles(8, n)  # blocks 1..4 are a_1..a_4, 5..8 are b_1..b_4
    e1 = _swap_blocks(1, 2, n)
    e2 = _swap_blocks(5, 6, n)
    d1 = _swap_blocks(3, 4, n)
    d2 = _swap_blocks(7, 8, n)
    v1 = a[0] * a[1] * a[2] * a[3]
    v2 = a[4] * a[5] * a[6] * a[7]
    v3 = d1 * d2
    v4 = e1 * e2
    group = generate_group([v1, v2, v3, v4], n)
    subset = [group.identity, v1, v2, v3, v4]
    return group, face_from_subset(group, subset)


def _p_case_pieces(n=18):
    a = _disjoint_three_cycles(6, n)  # a1 a2 b1 b2 c1 c2
    e1 = _swap_blocks(3, 4, n)        # exchanges b1, b2
    e2 = _swap_blocks(5, 6, n)        # exchanges c1, c2
    v1 = a[0] * a[1]
    v2 = a[2] * a[3] * a[4] * a[5]
    v3 = a[0] * a[2] * a[3]
    return e1, e2, v1, v2, v3


def _case_p():
    e1, e2, v1, v2, v3 = _p_case_pieces()
    v4 = e1 * e2
    group = generate_group([v1, v2, v3, v4], 18)
    subset = [group.identity, v1, v2, v4]
    return group, face_from_subset(group, subset)


def _case_wedge_octahedron_facet():
    e1, _, v1, v2, v3 = _p_case_pieces()
    v4 = e1
    group = generate_group([v1, v2, v3, v4], 18)
    subset = [group.identity, v1, v2, v4]
    return group, face_from_subset(group, subset)


def _case_hypersimplex():
    n = 15
    a = _disjoint_three_cycles(5, n)
    v1 = a[0] * a[1]
    v2 = a[2] * a[3]
    v3 = a[0] * a[2]
    v4 = a[0] * a[4]
    group = generate_group([v1, v2, v3, v4], n)
    subset = [group.identity, v1, v2, v4]
    return group, face_from_subset(group, subset)


def octahedron_example_group() -> tuple[PermutationGroup, Permutation]:
    """The order-27 group in S_12 whose pair face is an octahedron."""
    n = 12
    z1, z2, z1p, z2p = _disjoint_three_cycles(4, n)
    group = generate_group([z1 * z1p, z2 * z2p, z1.inverse() * z2 * z1p], n)
    g1 = z1 * z2 * z1p * z2p
    return group, g1


def _case_octahedron():
    group, g1 = octahedron_example_group()
    return group, smallest_face_pair(group, group.identity, g1)


def _case_pyramid_octahedron():
    base, g1 = octahedron_example_group()
    oct_face = smallest_face_pair(base, base.identity, g1)
    extended, _ = pyramid_group(base)
    n = base.degree
    diag = [Permutation(tuple(v.images) + tuple(x + n for x in v.images))
            for v in oct_face]
    p = Permutation(tuple(range(n + 1, 2 * n + 1)) + tuple(range(1, n + 1)))
    subset = diag + [p]
    return extended, face_from_subset(extended, subset)


def _case_prism_octahedron():
    base, g1 = octahedron_example_group()
    oct_face = smallest_face_pair(base, base.identity, g1)
    segment = group_from_cycle_strings(["(1 2)"], 2)
    group = embed_product(base, segment, "disjoint")
    n = base.degree
    tau = from_cycles([(n + 1, n + 2)], n + 2)
    lifted = [Permutation(tuple(v.images) + (n + 1, n + 2)) for v in oct_face]
    subset = lifted + [v * tau for v in lifted]
    return group, face_from_subset(group, subset)


def _case_bipyramid_cube():
    group, _, face = constr_face(1, 3)
    return group, face


def _case_crosspolytope4():
    group = canonical_crosspolytope_group(4)
    return group, list(group.elements)


FACE_CASES: dict[str, FaceCase] = {
    "dual_W": FaceCase(
        "dual_W", 36, _case_dual_w, lambda: reference_lattice("dual_W")),
    "P": FaceCase(
        "P", 54, _case_p, lambda: reference_lattice("table2(P)")),
    "wedge_octahedron_facet": FaceCase(
        "wedge_octahedron_facet", 54, _case_wedge_octahedron_facet,
        lambda: wedge_lattice(crosspolytope_lattice(3),
                              crosspolytope_lattice(3).facets[0])),
    "hypersimplex": FaceCase(
        "hypersimplex", 81, _case_hypersimplex,
        lambda: pyramid_lattice(reference_lattice("hypersimplex(5,2)"))),
    "octahedron": FaceCase(
        "octahedron", 27, _case_octahedron,
        lambda: crosspolytope_lattice(3)),
    "bipyramid_cube": FaceCase(
        "bipyramid_cube", 81, _case_bipyramid_cube,
        lambda: bipyramid_lattice(cube_lattice(3))),
    "pyramid_octahedron": FaceCase(
        "pyramid_octahedron", 54, _case_pyramid_octahedron,
        lambda: pyramid_lattice(crosspolytope_lattice(3))),
    "prism_octahedron": FaceCase(
        "prism_octahedron", 54, _case_prism_octahedron,
        lambda: prism_lattice(crosspolytope_lattice(3))),
    "crosspolytope4": FaceCase(
        "crosspolytope4", 8, _case_crosspolytope4,
        lambda: crosspolytope_lattice(4)),
}


@dataclass
class FaceCaseResult:
    name: str
    group_order: int
    order_ok: bool
    face_size: int
    face_dim: int
    f_vector: tuple[int, ...]
    reference_f_vector: tuple[int, ...]
    isomorphic: bool
    seconds: float

    @property
    def passed(self) -> bool:
        return self.order_ok and self.isomorphic

    def to_json_dict(self, with_timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "group_order": self.group_order,
            "face_size": self.face_size,
            "face_dim": self.face_dim,
            "f_vector": list(self.f_vector),
            "reference_f_vector": list(self.reference_f_vector),
            "isomorphic": self.isomorphic,
            "passed": self.passed,
        }
        if with_timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def build_face_case(name: str) -> FaceCaseResult:
    """Build one explicit construction and compare it to its reference type."""
    if name not in FACE_CASES:
        raise UnknownNameError(name)
    case = FACE_CASES[name]
    t0 = time.monotonic()
    group, face_elems = case.build()
    poly = PermPolytope(group)
    face_poly = poly.face_vpolytope(face_elems)
    lattice = face_poly.face_lattice()
    reference = case.reference()
    return FaceCaseResult(
        name=name,
        group_order=group.order,
        order_ok=group.order == case.expected_group_order,
        face_size=len(face_elems),
        face_dim=face_poly.dim,
        f_vector=lattice.f_vector,
        reference_f_vector=reference.f_vector,
        isomorphic=combinatorially_isomorphic(lattice, reference) is not None,
        seconds=time.monotonic() - t0,
    )


# -- combinatorial filters ------------------------------------------------------------

def combinatorially_centrally_symmetric(lattice: FaceLattice) -> bool:
    """Whether the lattice admits an antipodal involution.

    Searches lattice automorphisms for a fixed-point-free involution such
    that no proper face contains a vertex together with its image.
    """
    n = lattice.n_vertices
    if n % 2 == 1:
        return False
    if n == 2 and lattice.dim == 1:
        return True
    for auto in lattice_isomorphisms(lattice, lattice):
        if any(auto[v] == v for v in range(n)):
            continue
        if any(auto[auto[v]] != v for v in range(n)):
            continue
        if any(v in f and auto[v] in f for v in range(n) for f in lattice.facets):
            continue
        return True
    return False


def smallface_filter(lattice: FaceLattice) -> bool:
    """Screen: every minimal face over a vertex pair must look centrally
    symmetric at the combinatorial level."""
    n = lattice.n_vertices
    for u in range(n):
        for v in range(u + 1, n):
            face = lattice.smallest_face_containing([u, v])
            sub, _ = lattice.interval_lattice(face)
            if not combinatorially_centrally_symmetric(sub):
                return False
    return True


def vertex_count_power_of_two_filter(lattice: FaceLattice) -> bool:
    """Centrally symmetric candidates need a power-of-two vertex count."""
    if not combinatorially_centrally_symmetric(lattice):
        return True
    n = lattice.n_vertices
    return n & (n - 1) == 0


# -- per-group invariant battery -------------------------------------------------------

@dataclass
class InvariantReport:
    order: int
    degree: int
    dim: int
    vertex_degree: int
    vertex_count_ok: bool
    degrees_equal_ok: bool
    bounds_ok: bool
    zero_outside_hull_ok: bool
    kernel_dim_ok: bool
    pair_faces_symmetric_ok: bool
    three_way_agreement_ok: bool

    @property
    def passed(self) -> bool:
        return all((self.vertex_count_ok, self.degrees_equal_ok, self.bounds_ok,
                    self.zero_outside_hull_ok, self.kernel_dim_ok,
                    self.pair_faces_symmetric_ok, self.three_way_agreement_ok))

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "degree": self.degree,
            "dim": self.dim,
            "vertex_degree": self.vertex_degree,
            "checks": {
                "vertex_count": self.vertex_count_ok,
                "equal_vertex_degrees": self.degrees_equal_ok,
                "dimension_bounds": self.bounds_ok,
                "zero_outside_affine_hull": self.zero_outside_hull_ok,
                "kernel_dimension_identity": self.kernel_dim_ok,
                "pair_faces_centrally_symmetric": self.pair_faces_symmetric_ok,
                "three_way_face_agreement": self.three_way_agreement_ok,
            },
            "passed": self.passed,
        }


def group_invariants(group: PermutationGroup) -> InvariantReport:
    """Run the whole structural invariant battery on one group."""
    from .groups import PermRepresentation, subelements
    from .permutation_polytope import (
        affine_kernel, edge_graph, pair_face_antipode)

    poly = PermPolytope(group)
    order, dim = group.order, poly.dim
    graph = edge_graph(group)
    degrees_equal = all(len(nbrs) == graph.degree for nbrs in graph.adjacency)
    bounds = 2 ** dim >= order and dim <= order - 1
    zero_ok = not poly.contains_zero_in_affine_hull()
    kernel = affine_kernel(PermRepresentation.natural(group))
    kernel_ok = kernel.dimension == order - 1 - dim

    pair_ok = True
    three_way_ok = True
    sub_cache = {k: subelements(k, group) for k in group.elements}
    e = group.identity
    for g in group.elements:
        subs = sub_cache[g]
        if (face_from_subset(group, [e, g]) != subs
                or smallest_face_pair(group, e, g) != subs):
            three_way_ok = False
    for g in group.elements:
        for h in group.elements:
            k = g.inverse() * h
            face = [g * s for s in sub_cache[k]]
            face_set = set(face)
            target = [a + b for a, b in zip(g.matrix_flat(), h.matrix_flat())]
            for v in face:
                w = pair_face_antipode(g, h, v)
                if w not in face_set:
                    pair_ok = False
                    break
                summed = [a + b for a, b in zip(v.matrix_flat(), w.matrix_flat())]
                if summed != target:
                    pair_ok = False
                    break
            if not pair_ok:
                break
        if not pair_ok:
            break

    return InvariantReport(
        order=order,
        degree=group.degree,
        dim=dim,
        vertex_degree=graph.degree,
        vertex_count_ok=poly.n_vertices == order
        and len(set(poly.vpoly.vertices)) == order,
        degrees_equal_ok=degrees_equal,
        bounds_ok=bounds,
        zero_outside_hull_ok=zero_ok,
        kernel_dim_ok=kernel_ok,
        pair_faces_symmetric_ok=pair_ok,
        three_way_agreement_ok=three_way_ok,
    )


# -- report -----------------------------------------------------------------------------

def classification_report(with_timings: bool = True) -> dict:
    """Verdicts for Table 1 and every face case, as a JSON-ready dict."""
    table1 = verify_table1()
    cases = [build_face_case(name) for name in FACE_CASES]
    return {
        "table1": table1.to_json_dict(with_timings=with_timings),
        "face_cases": [c.to_json_dict(with_timings=with_timings) for c in cases],
        "passed": table1.passed and all(c.passed for c in cases),
    }
