"""Reference polytopes and combinatorial constructors on face lattices.

The catalog names are strings like ``"simplex(4)"``, ``"cube(3)"``,
``"crosspolytope(4)"``, ``"hypersimplex(5,2)"``, ``"birkhoff(3)"``,
``"square_pyramid"``, ``"triangular_prism"``, ``"octahedron"``,
``"wedge_W"``, ``"dual_W"``, ``"table2(P)"``, ``"table2(Q1)"``,
``"table2(Q2)"``.  Table-2 lattices are reconstructed from the published
vertex-facet incidences shipped verbatim in ``data/table2_incidences.json``
(vertex indices 0-based as printed).
"""

from __future__ import annotations

import json
import re
from importlib import resources
from itertools import combinations, product as iproduct

from .errors import InvalidFaceError, UnknownNameError
from .vpolytope import FaceLattice, VPolytope


# -- lattice constructors -----------------------------------------------------

def point_lattice() -> FaceLattice:
    return FaceLattice(1, [])


def segment_lattice() -> FaceLattice:
    return FaceLattice(2, [frozenset({0}), frozenset({1})])


def simplex_lattice(d: int) -> FaceLattice:
    if d == 0:
        return point_lattice()
    verts = range(d + 1)
    return FaceLattice(d + 1, [frozenset(c) for c in combinations(verts, d)])


def product_lattice(l1: FaceLattice, l2: FaceLattice) -> FaceLattice:
    """Combinatorial product; vertex (i, j) gets index i * n2 + j."""
    n1, n2 = l1.n_vertices, l2.n_vertices
    all1, all2 = range(n1), range(n2)
    facets = [frozenset(i * n2 + j for i in f for j in all2) for f in l1.facets]
    facets += [frozenset(i * n2 + j for i in all1 for j in g) for g in l2.facets]
    return FaceLattice(n1 * n2, facets)


def pyramid_lattice(base: FaceLattice) -> FaceLattice:
    """One apex over the whole base; the base stays as a facet."""
    n = base.n_vertices
    apex = n
    facets = [frozenset(range(n))]
    facets += [f | {apex} for f in base.facets]
    return FaceLattice(n + 1, facets)


def free_sum_lattice(l1: FaceLattice, l2: FaceLattice) -> FaceLattice:
    """Combinatorial free sum (dual of the product); both summands must have
    dimension >= 1 so that each contributes facets."""
    if l1.dim < 1 or l2.dim < 1:
        raise ValueError("free sum requires summands of dimension >= 1")
    n1 = l1.n_vertices
    facets = [a | frozenset(n1 + j for j in b)
              for a in l1.facets for b in l2.facets]
    return FaceLattice(n1 + l2.n_vertices, facets)


def prism_lattice(base: FaceLattice) -> FaceLattice:
    return product_lattice(base, segment_lattice())


def bipyramid_lattice(base: FaceLattice) -> FaceLattice:
    return free_sum_lattice(base, segment_lattice())


def cube_lattice(d: int) -> FaceLattice:
    lat = point_lattice()
    for _ in range(d):
        lat = product_lattice(lat, segment_lattice())
    return lat


def crosspolytope_lattice(d: int) -> FaceLattice:
    if d == 0:
        return point_lattice()
    lat = segment_lattice()
    for _ in range(d - 1):
        lat = free_sum_lattice(lat, segment_lattice())
    return lat


def wedge_lattice(base: FaceLattice, face: frozenset[int]) -> FaceLattice:
    """Wedge of a polytope over one of its proper faces.

    Vertices on the face stay single; all others split into a bottom and a
    top copy.  Facets: the bottom copy, the top copy, and one side facet per
    facet of the base other than the face itself.
    """
    face = frozenset(face)
    if face not in base.face_dims or len(face) == base.n_vertices:
        raise InvalidFaceError(f"{sorted(face)} is not a proper face")
    n = base.n_vertices
    bottom: dict[int, int] = {}
    top: dict[int, int] = {}
    nxt = 0
    for v in range(n):
        if v in face:
            bottom[v] = top[v] = nxt
            nxt += 1
        else:
            bottom[v] = nxt
            top[v] = nxt + 1
            nxt += 2
    facets = [frozenset(bottom[v] for v in range(n)),
              frozenset(top[v] for v in range(n))]
    for g in base.facets:
        if g == face:
            continue
        facets.append(frozenset(bottom[v] for v in g) | frozenset(top[v] for v in g))
    return FaceLattice(nxt, facets)


def constructed_lattice(op: str, *args) -> FaceLattice:
    """Dispatch for {product, pyramid, free_sum, prism, bipyramid, wedge, dual}."""
    ops = {
        "product": product_lattice,
        "pyramid": pyramid_lattice,
        "free_sum": free_sum_lattice,
        "prism": prism_lattice,
        "bipyramid": bipyramid_lattice,
        "wedge": wedge_lattice,
    }
    if op == "dual":
        (lat,) = args
        return lat.dual()
    if op not in ops:
        raise UnknownNameError(op)
    return ops[op](*args)


# -- coordinate models ----------------------------------------------------------

def simplex_vpolytope(d: int) -> VPolytope:
    pts = [tuple(0 for _ in range(d))]
    for i in range(d):
        v = [0] * d
        v[i] = 1
        pts.append(tuple(v))
    return VPolytope(pts) if d else VPolytope([(0,)])

def cube_vpolytope(d: int) -> VPolytope:
    return VPolytope(list(iproduct(*[[0, 1]] * d))) if d else VPolytope([(0,)])


def crosspolytope_vpolytope(d: int) -> VPolytope:
    pts = []
    for i in range(d):
        for s in (1, -1):
            v = [0] * d
            v[i] = s
            pts.append(tuple(v))
    return VPolytope(pts) if d else VPolytope([(0,)])


def hypersimplex_vpolytope(n: int, k: int) -> VPolytope:
    pts = [p for p in iproduct(*[[0, 1]] * n) if sum(p) == k]
    return VPolytope(pts)


# -- catalog ---------------------------------------------------------------------

def _table2_data() -> dict:
    text = resources.files("permpolytopes.data").joinpath(
        "table2_incidences.json").read_text()
    return json.loads(text)


def table2_lattice(which: str) -> FaceLattice:
    data = _table2_data()
    if which not in data:
        raise UnknownNameError(f"table2({which})")
    entry = data[which]
    lat = FaceLattice(entry["f_vector"][0], [frozenset(f) for f in entry["facets"]])
    assert list(lat.f_vector) == entry["f_vector"], \
        f"published f-vector mismatch for {which}"
    return lat


def square_pyramid_lattice() -> FaceLattice:
    return pyramid_lattice(cube_lattice(2))


def wedge_w_lattice() -> FaceLattice:
    """Wedge over a base edge of the square pyramid (base vertices 0..3)."""
    sp = square_pyramid_lattice()
    base_edge = frozenset({0, 1})
    assert base_edge in sp.face_dims and sp.face_dims[base_edge] == 1
    return wedge_lattice(sp, base_edge)


_PARAM = re.compile(r"^([a-zA-Z_0-9]+)\((.*)\)$")


def reference_lattice(name: str) -> FaceLattice:
    """Canonical face lattice for a catalog name; raises UnknownNameError."""
    name = name.strip()
    m = _PARAM.match(name)
    if m:
        head, argstr = m.group(1), m.group(2)
        args = [a.strip() for a in argstr.split(",")] if argstr else []
        if head == "simplex":
            return simplex_lattice(int(args[0]))
        if head == "cube":
            return cube_lattice(int(args[0]))
        if head == "crosspolytope":
            return crosspolytope_lattice(int(args[0]))
        if head == "hypersimplex":
            n, k = int(args[0]), int(args[1])
            return hypersimplex_vpolytope(n, k).face_lattice()
        if head == "birkhoff":
            if int(args[0]) != 3:
                raise UnknownNameError(name)
            return free_sum_lattice(simplex_lattice(2), simplex_lattice(2))
        if head == "table2":
            return table2_lattice(args[0])
        raise UnknownNameError(name)
    fixed = {
        "square_pyramid": square_pyramid_lattice,
        "triangular_prism": lambda: prism_lattice(simplex_lattice(2)),
        "octahedron": lambda: crosspolytope_lattice(3),
        "wedge_W": wedge_w_lattice,
        "dual_W": lambda: wedge_w_lattice().dual(),
    }
    if name in fixed:
        return fixed[name]()
    raise UnknownNameError(name)


#: How Table 1 combinatorial type names map onto catalog constructions.
TABLE1_TYPE_LATTICES = {
    "triangle": lambda: simplex_lattice(2),
    "square": lambda: cube_lattice(2),
    "tetrahedron": lambda: simplex_lattice(3),
    "triangular prism": lambda: prism_lattice(simplex_lattice(2)),
    "cube": lambda: cube_lattice(3),
    "4-simplex": lambda: simplex_lattice(4),
    "B_3": lambda: free_sum_lattice(simplex_lattice(2), simplex_lattice(2)),
    "prism over tetrahedron": lambda: prism_lattice(simplex_lattice(3)),
    "4-crosspolytope": lambda: crosspolytope_lattice(4),
    "product of triangles": lambda: product_lattice(simplex_lattice(2),
                                                    simplex_lattice(2)),
    "prism over triangular prism": lambda: prism_lattice(
        prism_lattice(simplex_lattice(2))),
    "4-cube": lambda: cube_lattice(4),
}
