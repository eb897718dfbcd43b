"""Permutation polytopes: convex hulls of permutation groups.

The vertex rows of ``PermPolytope`` are the 0/1 permutation matrices of the
group elements flattened to length n^2, in canonical element order, so
vertex index i always means ``group.elements[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    CapExceededError,
    NotAMemberError,
    NotAPowerOfTwoError,
    NotCentrallySymmetricError,
)
from .groups import (
    PermRepresentation,
    PermutationGroup,
    embed_product,
    generate_group,
    isomorphisms,
    regular_representation,
    subelements,
)
from .linalg import Mat, rank_nullspace, solve, Infeasible, vec
from .perms import Permutation, from_cycles
from .vpolytope import FaceLattice, VPolytope, affinely_equivalent


class PermPolytope:
    """The polytope of a permutation group, with the element <-> vertex map."""

    def __init__(self, group: PermutationGroup):
        self.group = group
        self.vpoly = VPolytope([g.matrix_flat() for g in group.elements])

    @property
    def dim(self) -> int:
        return self.vpoly.dim

    @property
    def n_vertices(self) -> int:
        return self.vpoly.n_vertices

    def vertex_index(self, g: Permutation) -> int:
        return self.group.index(g)

    def elements_of(self, indices: Sequence[int]) -> list[Permutation]:
        return [self.group.elements[i] for i in indices]

    def face_lattice(self) -> FaceLattice:
        return self.vpoly.face_lattice()

    def face_vpolytope(self, elems: Sequence[Permutation]) -> VPolytope:
        return VPolytope([g.matrix_flat() for g in sorted(elems)])

    def is_face(self, elems: Sequence[Permutation]) -> bool:
        return self.vpoly.is_face([self.vertex_index(g) for g in elems])

    def contains_zero_in_affine_hull(self) -> bool:
        """Whether 0 is an affine combination of the vertices (it never is)."""
        rows = [list(v) for v in zip(*self.vpoly.vertices)]
        rows.append([Fraction(1)] * self.n_vertices)
        rhs = [Fraction(0)] * (len(rows) - 1) + [Fraction(1)]
        return not isinstance(solve(rows, rhs), Infeasible)


def build(group: PermutationGroup) -> PermPolytope:
    return PermPolytope(group)


def dimension(group: PermutationGroup) -> int:
    """Affine dimension of the permutation polytope (exact rank computation)."""
    return PermPolytope(group).dim


# -- faces from subsets (entrywise maximum construction) ------------------------

def face_from_subset(group: PermutationGroup,
                     subset: Sequence[Permutation]) -> list[Permutation]:
    """The face cut out by the entrywise maximum of the subset's matrices.

    Returns every g in the group whose 1-entries all lie inside the union of
    the subset's 1-entries; the subset itself is always contained in the
    result, and the result is the vertex set of a face of the polytope.
    """
    subset = list(subset)
    if not subset:
        raise ValueError("subset must be nonempty")
    n = group.degree
    allowed: list[set[int]] = [set() for _ in range(n + 1)]
    for s in subset:
        if s not in group:
            raise NotAMemberError(f"{s} is not in the group")
        for i in range(1, n + 1):
            allowed[i].add(s(i))
    return [g for g in group.elements
            if all(g(i) in allowed[i] for i in range(1, n + 1))]


def smallest_face_pair(group: PermutationGroup, g: Permutation,
                       h: Permutation) -> list[Permutation]:
    """Vertex set of the smallest face containing the two vertices g and h.

    Left translation moves the pair to (e, g^-1 h), whose smallest face is
    the set of subelements; the result is always centrally symmetric with
    center (g + h)/2.
    """
    if g not in group or h not in group:
        raise NotAMemberError("both elements must lie in the group")
    k = g.inverse() * h
    return sorted(g * s for s in subelements(k, group))


def pair_face_antipode(g: Permutation, h: Permutation, v: Permutation) -> Permutation:
    """Antipodal vertex of v in the smallest face containing g and h."""
    k = g.inverse() * h
    u = g.inverse() * v
    return g * (k * u.inverse())


@dataclass(frozen=True)
class EdgeGraph:
    n: int
    degree: int
    adjacency: tuple[frozenset[int], ...]  # by canonical element index


def edge_graph(group: PermutationGroup) -> EdgeGraph:
    """Vertex adjacency of the polytope: g ~ h iff g^-1 h is indecomposable.

    All vertices share the same degree, the number of indecomposable
    elements of the group.
    """
    indecomposable = [x for x in group.elements
                      if not x.is_identity() and len(subelements(x, group)) == 2]
    ind_set = set(indecomposable)
    adj = []
    for g in group.elements:
        nbrs = frozenset(group.index(g * x) for x in ind_set)
        adj.append(nbrs)
    return EdgeGraph(group.order, len(indecomposable), tuple(adj))


# -- affine kernels and equivalence ----------------------------------------------

@dataclass(frozen=True)
class AffineKernel:
    """Canonical basis of the affine dependencies among the images rho(a).

    Coefficient vectors are indexed by the canonical element order of the
    base group; the basis is a reduced row echelon form, so two kernels are
    equal iff their bases compare equal.
    """

    group_order: int
    basis: Mat

    @property
    def dimension(self) -> int:
        return len(self.basis)


def affine_kernel(rep: PermRepresentation) -> AffineKernel:
    """Null space of the (n^2 + 1) x |A| matrix of flattened images over 1s."""
    cols = [list(img.matrix_flat()) + [1] for img in rep.images]
    rows = [vec(r) for r in zip(*cols)]
    _, basis = rank_nullspace(rows, ncols=rep.base.order)
    return AffineKernel(rep.base.order, basis)


def stably_equivalent(rep1: PermRepresentation, rep2: PermRepresentation) -> bool:
    """Exact equality of canonical affine-kernel bases.

    Both representations must belong to the same base group so coefficients
    are indexed identically.
    """
    if rep1.base != rep2.base:
        raise ValueError("stable equivalence compares representations of one group")
    return affine_kernel(rep1).basis == affine_kernel(rep2).basis


def effectively_equivalent(g1: PermutationGroup, g2: PermutationGroup,
                           ) -> Optional[dict[Permutation, Permutation]]:
    """First isomorphism transporting one kernel onto the other, or None."""
    kernel1 = affine_kernel(PermRepresentation.natural(g1)).basis
    for iso in isomorphisms(g1, g2):
        rep = PermRepresentation(
            g1, [iso[a] for a in g1.elements], _trusted=True)
        if affine_kernel(rep).basis == kernel1:
            return iso
    return None


def is_simplex(group: PermutationGroup) -> bool:
    """True iff the polytope is a (|G|-1)-simplex, i.e. the kernel is zero."""
    return affine_kernel(PermRepresentation.natural(group)).dimension == 0


def affinely_equivalent_polytopes(p: PermPolytope, q: PermPolytope):
    """Exact affine isomorphism between two permutation polytopes, or None."""
    return affinely_equivalent(p.vpoly, q.vpoly)


# -- centrally symmetric polytopes and the F2 encoding ----------------------------

@dataclass(frozen=True)
class F2Subspace:
    """Subspace of F_2^r containing the all-ones vector.

    Row vectors are tuples over {0,1} in reduced row echelon form; the
    subspace encodes a centrally symmetric permutation polytope via the
    2-cycles of the vertex opposite to the identity.
    """

    r: int
    basis: tuple[tuple[int, ...], ...]
    cycles: tuple[tuple[int, int], ...]  # the distinguished 2-cycles z_1..z_r

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[tuple[int, ...]]:
        out = {tuple([0] * self.r)}
        for row in self.basis:
            out |= {tuple(a ^ b for a, b in zip(v, row)) for v in out}
        return sorted(out)


def _f2_rref(rows: list[list[int]]) -> list[tuple[int, ...]]:
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r] if any(row))


def central_symmetry_data(group: PermutationGroup) -> Optional[F2Subspace]:
    """F2 encoding when the whole polytope is centrally symmetric, else None.

    The polytope is centrally symmetric iff some element has the entire
    group as its subelements; that element is then a product of r disjoint
    2-cycles and every group element picks out a subset of them.
    """
    g0 = next((g for g in group.elements
               if len(subelements(g, group)) == group.order), None)
    if g0 is None:
        return None
    cycles = g0.cycles()
    assert all(len(c) == 2 for c in cycles), "opposite vertex must be an involution"
    assert all(g.order() <= 2 for g in group.elements)
    assert group.order & (group.order - 1) == 0, "order must be a power of two"
    r = len(cycles)
    cycle_index = {frozenset(c): i for i, c in enumerate(cycles)}
    rows = []
    for g in group.elements:
        v = [0] * r
        for c in g.cycles():
            v[cycle_index[frozenset(c)]] = 1
        rows.append(v)
    basis = _f2_rref(rows)
    sub = F2Subspace(r, basis, tuple((c[0], c[1]) for c in cycles))
    assert len(sub.vectors()) == group.order
    assert tuple([1] * r) in sub.vectors()
    return sub


def group_from_f2_vectors(vectors: Sequence[Sequence[int]]) -> PermutationGroup:
    """Realize a subspace of F_2^r as a group of products of 2-cycles.

    Coordinate i is carried by the 2-cycle (2i-1, 2i), so the group acts on
    2r points.
    """
    r = len(vectors[0])
    n = 2 * r
    elems = []
    for v in vectors:
        cyc = [(2 * i + 1, 2 * i + 2) for i, bit in enumerate(v) if bit]
        elems.append(from_cycles(cyc, n))
    return generate_group(elems, n)


def free_sum_double(group: PermutationGroup) -> PermutationGroup:
    """A permutation group whose polytope is the free sum of P(G) with itself.

    Requires a centrally symmetric input; doubles the F2 encoding by gluing
    the diagonal and the antidiagonal embedding.
    """
    data = central_symmetry_data(group)
    if data is None:
        raise NotCentrallySymmetricError("input polytope is not centrally symmetric")
    r = data.r
    doubled = []
    for v in data.vectors():
        doubled.append(tuple(v) + tuple(v))
        doubled.append(tuple(v) + tuple(1 - x for x in v))
    doubled = sorted(set(doubled))
    assert len(doubled) == 2 * group.order
    return group_from_f2_vectors(doubled)


# -- canonical groups --------------------------------------------------------------

def canonical_cube_group(d: int) -> PermutationGroup:
    """<(1 2), (3 4), ..., (2d-1 2d)>, the d-cube group."""
    gens = [from_cycles([(2 * i + 1, 2 * i + 2)], 2 * d) for i in range(d)]
    return generate_group(gens, 2 * d)


def canonical_crosspolytope_group(d: int) -> PermutationGroup:
    """The unique effective-equivalence class with a d-crosspolytope polytope.

    d must be a power of two; with r = d 2-cycles z_1..z_d, the generators
    are g_0 = z_1...z_d plus k = log2(d) elements read off the k x d matrix
    whose columns list all 0/1 vectors (least significant row first).
    """
    if d < 1 or d & (d - 1) != 0:
        raise NotAPowerOfTwoError(f"crosspolytope dimension {d} is not a power of two")
    k = d.bit_length() - 1
    n = 2 * d
    cycles = [(2 * j + 1, 2 * j + 2) for j in range(d)]
    gens = [from_cycles(cycles, n)]
    for i in range(k):
        chosen = [cycles[j] for j in range(d) if (j >> i) & 1]
        gens.append(from_cycles(chosen, n))
    group = generate_group(gens, n)
    assert group.order == 2 * d
    return group


def canonical_group(kind: str, *args) -> PermutationGroup:
    """Catalog: cube(d), crosspolytope(2^k), regular(G)."""
    if kind == "cube":
        return canonical_cube_group(int(args[0]))
    if kind == "crosspolytope":
        return canonical_crosspolytope_group(int(args[0]))
    if kind == "regular":
        return regular_representation(args[0])
    raise ValueError(f"unknown canonical group kind {kind!r}")


# -- the crosspolytope-plus-cube face tower ----------------------------------------

def constr_face(sum_l: int, cube_d: int, degree_cap: int = 10_000,
                ) -> tuple[PermutationGroup, Permutation, list[Permutation]]:
    """Face that is a free sum of an l-crosspolytope and a d-cube.

    Follows the doubling tower: a base of d disjoint 3-cycles whose pair
    face is a d-cube, then l steps, each replacing G by its diagonal double
    extended by (g, e).  Returns (G, g_l, face vertex elements); the face is
    the smallest face containing e and g_l.

    For ``cube_d == 0`` the equivalent tower with one fewer doubling over a
    single 3-cycle is used (an l-crosspolytope is the free sum of an
    (l-1)-crosspolytope and a segment).
    """
    if sum_l + cube_d < 1 or sum_l < 0 or cube_d < 0:
        raise ValueError("need l + d >= 1")
    if cube_d == 0:
        sum_l, cube_d = sum_l - 1, 1
    n0 = 3 * cube_d
    if n0 * 2 ** sum_l > degree_cap:
        raise CapExceededError("tower degree exceeds cap")
    z = [tuple(range(3 * i + 1, 3 * i + 4)) for i in range(cube_d)]
    group = generate_group([from_cycles([c], n0) for c in z], n0)
    g = from_cycles(z, n0)
    for _ in range(sum_l):
        n = group.degree
        doubled = embed_product(group, group, "diagonal")
        p = _shift_left_copy(g, n)
        group = generate_group(list(doubled.generators) + [p], 2 * n)
        g = _shift_left_copy(g, n) * _shift_right_copy(g, n)
    face = smallest_face_pair(group, group.identity, g)
    return group, g, face


def _shift_left_copy(p: Permutation, n: int) -> Permutation:
    """(p, e) acting on 2n points."""
    return Permutation(tuple(p.images) + tuple(range(n + 1, 2 * n + 1)))


def _shift_right_copy(p: Permutation, n: int) -> Permutation:
    """(e, p) acting on 2n points."""
    return Permutation(tuple(range(1, n + 1)) + tuple(x + n for x in p.images))


# -- products ------------------------------------------------------------------------

def product_decompositions(group: PermutationGroup
                           ) -> list[tuple[PermutationGroup, PermutationGroup]]:
    """Nontrivial splittings G = H1 x H2 with disjoint supports.

    Searches bipartitions of the orbit set; emits (H1, H2) whenever the two
    support-restricted subgroups multiply up to the whole group.  Pairs are
    deduplicated up to swapping.
    """
    orbits = group.orbits()
    if len(orbits) < 2:
        return []
    out = []
    seen = set()
    # the last orbit always stays in part2, halving the bipartition search
    for mask in range(1, 2 ** (len(orbits) - 1)):
        part1: set[int] = set()
        for i, orb in enumerate(orbits[:-1]):
            if (mask >> i) & 1:
                part1 |= orb
        h1 = [g for g in group.elements if g.support() <= part1]
        part2 = set(range(1, group.degree + 1)) - part1
        h2 = [g for g in group.elements if g.support() <= part2]
        if len(h1) <= 1 or len(h2) <= 1:
            continue
        if len(h1) * len(h2) != group.order:
            continue
        key = frozenset({frozenset(h1), frozenset(h2)})
        if key in seen:
            continue
        seen.add(key)
        out.append((group.subgroup_from_elements(h1),
                    group.subgroup_from_elements(h2)))
    return out


@dataclass(frozen=True)
class SimpleCheckReport:
    is_simple: bool
    n_indecomposable: int
    dim: int
    factors: tuple[PermutationGroup, ...]
    factors_stably_regular: bool


def simple_polytope_check(group: PermutationGroup) -> SimpleCheckReport:
    """Simple polytopes decompose into stably regular factors.

    The polytope is simple iff the vertex degree equals its dimension; in
    that case the group splits into disjoint-support factors whose natural
    representations all have zero affine kernel.
    """
    graph = edge_graph(group)
    dim = dimension(group)
    if graph.degree != dim:
        return SimpleCheckReport(False, graph.degree, dim, (), False)
    factors = []
    stack = [group]
    while stack:
        g = stack.pop()
        decomp = product_decompositions(g)
        if not decomp:
            factors.append(g)
        else:
            stack.extend(decomp[0])
    factors.sort(key=lambda h: (h.order, [p.images for p in h.elements]))
    regular = all(is_simplex(_restrict_to_support(h)) for h in factors)
    return SimpleCheckReport(True, graph.degree, dim, tuple(factors), regular)


def _restrict_to_support(group: PermutationGroup) -> PermutationGroup:
    """Drop points fixed by the whole group (relabels to 1..m)."""
    moved = sorted(set().union(*[g.support() for g in group.elements]) or {1})
    pos = {x: i + 1 for i, x in enumerate(moved)}
    elems = [Permutation(tuple(pos[g(x)] for x in moved)) for g in group.elements]
    gens = [Permutation(tuple(pos[g(x)] for x in moved)) for g in group.generators]
    return PermutationGroup(len(moved), gens, elems)


# -- subgroup faces -------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupFaceReport:
    is_face: bool
    orbit_partition: tuple[frozenset[int], ...]
    equals_stabilizer: bool


def subgroup_face_test(group: PermutationGroup,
                       subgroup: PermutationGroup) -> SubgroupFaceReport:
    """LP face test for a subgroup's vertex set, plus stabilizer comparison.

    Reports whether conv(H) is a face of P(G) and whether H equals the
    setwise stabilizer of its own orbit partition.
    """
    sub = group.subgroup_from_elements(subgroup.elements)
    poly = PermPolytope(group)
    face = poly.is_face(sub.elements)
    partition = tuple(sub.orbits())
    stab = group.stabilizer(partition)
    return SubgroupFaceReport(face, partition, stab.elements == sub.elements)


def facet_complement_check(lattice: FaceLattice) -> dict[int, bool]:
    """For each facet, whether the complementary vertex set is again a face."""
    everything = frozenset(range(lattice.n_vertices))
    return {
        i: (everything - f) in lattice.face_dims
        for i, f in enumerate(lattice.facets)
    }
