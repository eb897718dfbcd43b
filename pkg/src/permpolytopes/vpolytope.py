"""Exact V-polytope engine.

Facets are computed by an incremental double description run on the polar
dual in exact affine coordinates; the face lattice is the closure of the
facet vertex sets under intersection.  The LP-based :func:`is_face` test is
deliberately independent of the double description code path so the two can
oracle-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterator, Optional, Sequence

from .errors import CapExceededError
from .linalg import (
    ZERO,
    ONE,
    AffineChart,
    Infeasible,
    Mat,
    Vec,
    affine_chart,
    dot,
    mat,
    normalize_integer_functional,
    rank,
    separating_functional,
    smith_normal_form,
    solve,
    vec,
    vsub,
)

DEFAULT_VERTEX_CAP = 200
DEFAULT_DIM_CAP = 12


def affine_project(points: Sequence[Sequence[Fraction]]) -> tuple[Mat, Mat, Vec]:
    """Exact affine coordinates of a point set.

    Returns (coords, basis, origin): an injective affine chart on the hull,
    of dimension equal to the affine dimension.  The basis is made of actual
    difference vectors, so integer inputs keep integral difference vectors.
    """
    chart = affine_chart(points)
    return chart.coords, chart.basis, chart.origin


@dataclass(frozen=True)
class Facet:
    """One facet: ambient inequality c.x <= rhs plus incident vertex indices."""

    normal: tuple[int, ...]
    rhs: int
    vertices: frozenset[int]


def _primitive_ray(r: Sequence[Fraction]) -> tuple[int, ...]:
    denom = reduce(lambda a, x: a * x.denominator // gcd(a, x.denominator), r, 1)
    ints = [int(x * denom) for x in r]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    return tuple(x // g for x in ints) if g > 1 else tuple(ints)


def _double_description(ineqs: list[Vec]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x : a.x <= 0 for a in ineqs}.

    The inequality matrix must have full column rank.  Deterministic in the
    given inequality order.
    """
    dim = len(ineqs[0])
    # initial simplicial cone from the first `dim` independent rows
    chosen: list[int] = []
    for k, a in enumerate(ineqs):
        if rank([ineqs[i] for i in chosen] + [list(a)]) > len(chosen):
            chosen.append(k)
        if len(chosen) == dim:
            break
    assert len(chosen) == dim, "inequalities do not span; cone is not pointed"
    rest = [k for k in range(len(ineqs)) if k not in chosen]
    order = chosen + rest
    sub = [ineqs[k] for k in chosen]
    rays: list[tuple[int, ...]] = []
    zsets: list[int] = []
    for j in range(dim):
        e = [ZERO] * dim
        e[j] = -ONE
        r = solve(sub, e)
        assert not isinstance(r, Infeasible)
        rays.append(_primitive_ray(r))
        zsets.append(sum(1 << i for i in range(dim) if i != j))

    def tight_set(ray, upto):
        z = 0
        for i in range(upto):
            if dot(vec(ray), ineqs[order[i]]) == 0:
                z |= 1 << i
        return z

    for step in range(dim, len(order)):
        a = ineqs[order[step]]
        vals = [dot(vec(r), a) for r in rays]
        keep_idx = [i for i, v in enumerate(vals) if v <= 0]
        plus_idx = [i for i, v in enumerate(vals) if v > 0]
        new_rays: list[tuple[int, ...]] = []
        for ip in plus_idx:
            for im in keep_idx:
                if vals[im] == 0:
                    continue
                common = zsets[ip] & zsets[im]
                adjacent = True
                for k, z in enumerate(zsets):
                    if k != ip and k != im and common & z == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                p, m = rays[ip], rays[im]
                comb = [vals[ip] * mx - vals[im] * px for px, mx in zip(p, m)]
                new_rays.append(_primitive_ray(comb))
        rays_next = [rays[i] for i in keep_idx]
        zsets_next = [zsets[i] | ((1 << step) if vals[i] == 0 else 0)
                      for i in keep_idx]
        for r in new_rays:
            rays_next.append(r)
            zsets_next.append(tight_set(r, step + 1))
        rays, zsets = rays_next, zsets_next
    return rays


def facet_enumeration(vertices: Sequence[Sequence[Fraction]],
                      vertex_cap: int = DEFAULT_VERTEX_CAP,
                      dim_cap: int = DEFAULT_DIM_CAP) -> list[Facet]:
    """Irredundant facet inequalities plus exact vertex-facet incidence.

    The result is canonical: vertices are sorted internally, so any
    permutation of the input rows yields the same facet list (incidences are
    reported in the input indexing).
    """
    pts = mat(vertices)
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate vertices")
    if len(pts) > vertex_cap:
        raise CapExceededError(f"{len(pts)} vertices exceed cap {vertex_cap}")
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    spts = [pts[i] for i in order]
    chart = affine_chart(spts)
    d = chart.dim
    if d > dim_cap:
        raise CapExceededError(f"dimension {d} exceeds cap {dim_cap}")
    if d == 0:
        return []
    m = len(spts)
    bary = tuple(sum(col, ZERO) / m for col in zip(*chart.coords))
    # polar-dual cone over (y, t): (z_i - b).y - t <= 0; rays with t > 0 are
    # exactly the vertices y/t of the dual, i.e. the facets of the hull
    ineqs = [vec(list(vsub(z, bary)) + [-ONE]) for z in chart.coords]
    rays = _double_description(ineqs)
    facets = []
    for r in rays:
        y, t = vec(r[:-1]), Fraction(r[-1])
        assert t > 0, "unbounded dual ray; input was not full-dimensional"
        rhs_chart = t + dot(y, bary)
        c_amb, rhs_amb = chart.pull_back_functional(y, rhs_chart)
        c_int, rhs_int = normalize_integer_functional(c_amb, rhs_amb)
        incident = frozenset(
            order[i] for i, z in enumerate(chart.coords) if dot(y, z) == rhs_chart
        )
        facets.append(Facet(c_int, rhs_int, incident))
    facets.sort(key=lambda f: sorted(f.vertices))
    for f in facets:
        assert all(dot(vec(f.normal), p) <= f.rhs for p in pts)
    return facets


# -- face lattice ---------------------------------------------------------------

class FaceLattice:
    """All faces of a polytope as vertex-index sets, graded by dimension.

    Faces are the closure of the facet vertex sets under intersection,
    together with the full polytope and the empty face.  The grading is
    combinatorial (longest chain), so lattices reconstructed from published
    incidence data behave exactly like coordinate-backed ones.
    """

    def __init__(self, n_vertices: int, facets: Sequence[frozenset[int]]):
        self.n_vertices = n_vertices
        self.facets = tuple(sorted((frozenset(f) for f in facets),
                                   key=lambda f: sorted(f)))
        full = frozenset(range(n_vertices))
        faces = {full}
        queue = [full]
        while queue:
            f = queue.pop()
            for t in self.facets:
                meet = f & t
                if meet not in faces:
                    faces.add(meet)
                    queue.append(meet)
        faces.add(frozenset())
        by_size = sorted(faces, key=lambda f: (len(f), sorted(f)))
        dim_of: dict[frozenset[int], int] = {}
        for f in by_size:
            if not f:
                dim_of[f] = -1
                continue
            dim_of[f] = 1 + max(
                (dim_of[g] for g in by_size if len(g) < len(f) and g < f),
                default=-1,
            )
        self.dim = dim_of[full]
        if n_vertices > 1:
            missing = [i for i in range(n_vertices) if frozenset({i}) not in faces]
            if missing:
                raise ValueError(
                    f"not a polytope lattice: vertices {missing} are not faces")
        self.face_dims = dim_of
        by_dim: dict[int, list[frozenset[int]]] = {}
        for f, dv in dim_of.items():
            by_dim.setdefault(dv, []).append(f)
        self.faces_by_dim = {
            dv: tuple(sorted(fs, key=lambda f: sorted(f)))
            for dv, fs in sorted(by_dim.items())
        }

    @classmethod
    def from_facets(cls, n_vertices: int, facets: Sequence[Sequence[int]]
                    ) -> "FaceLattice":
        return cls(n_vertices, [frozenset(f) for f in facets])

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_by_dim.get(d, ())) for d in range(self.dim))

    def euler_ok(self) -> bool:
        total = sum((-1) ** d * fd for d, fd in enumerate(self.f_vector))
        return total == 1 - (-1) ** self.dim

    def all_faces(self) -> Iterator[frozenset[int]]:
        for d in sorted(self.faces_by_dim):
            yield from self.faces_by_dim[d]

    def is_face_set(self, subset: Sequence[int]) -> bool:
        return frozenset(subset) in self.face_dims

    def edges(self) -> tuple[frozenset[int], ...]:
        return self.faces_by_dim.get(1, ())

    def vertex_degrees(self) -> list[int]:
        degs = [0] * self.n_vertices
        for e in self.edges():
            for v in e:
                degs[v] += 1
        return degs

    def smallest_face_containing(self, subset: Sequence[int]) -> frozenset[int]:
        """Meet of all faces containing the subset."""
        s = frozenset(subset)
        current = frozenset(range(self.n_vertices))
        for t in self.facets:
            if s <= t:
                current &= t
        return current

    def interval_lattice(self, face: frozenset[int]) -> tuple["FaceLattice", list[int]]:
        """The face lattice of one face, with the relabeling used."""
        if face not in self.face_dims:
            raise ValueError("not a face of this lattice")
        labels = sorted(face)
        pos = {v: i for i, v in enumerate(labels)}
        subfaces = [g for g in self.face_dims
                    if g < face and self.face_dims[g] == self.face_dims[face] - 1]
        relabeled = [frozenset(pos[v] for v in g) for g in subfaces]
        return FaceLattice(len(labels), relabeled), labels

    def dual(self) -> "FaceLattice":
        """The combinatorially dual lattice (vertices <-> facets)."""
        dual_facets = []
        for v in range(self.n_vertices):
            dual_facets.append(frozenset(
                i for i, f in enumerate(self.facets) if v in f))
        return FaceLattice(len(self.facets), dual_facets)

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "f_vector": list(self.f_vector),
            "facets": [sorted(f) for f in self.facets],
            "faces_by_dim": {
                str(d): [sorted(f) for f in fs]
                for d, fs in self.faces_by_dim.items()
            },
        }

    def __eq__(self, other) -> bool:
        return (isinstance(other, FaceLattice)
                and self.n_vertices == other.n_vertices
                and self.facets == other.facets)

    def __repr__(self) -> str:
        return f"<FaceLattice dim={self.dim} f={self.f_vector}>"


# -- combinatorial isomorphism ---------------------------------------------------

def _refine_colors(vcols, fcols, incidence_v, incidence_f):
    """Stable bipartite color refinement; color values comparable across inputs."""
    while True:
        new_v = tuple(
            (vcols[v], tuple(sorted(fcols[f] for f in incidence_v[v])))
            for v in range(len(vcols))
        )
        new_f = tuple(
            (fcols[f], tuple(sorted(vcols[v] for v in incidence_f[f])))
            for f in range(len(fcols))
        )
        # compress to ints by sorted order of the composite keys
        vkeys = sorted(set(new_v))
        fkeys = sorted(set(new_f))
        cv = tuple(vkeys.index(k) for k in new_v)
        cf = tuple(fkeys.index(k) for k in new_f)
        if cv == vcols and cf == fcols:
            return vcols, fcols
        vcols, fcols = cv, cf


def lattice_isomorphisms(l1: FaceLattice, l2: FaceLattice
                         ) -> Iterator[dict[int, int]]:
    """All vertex bijections inducing isomorphisms of the two face lattices.

    Vertex-facet incidences determine the lattice of a polytope, so the
    search refines vertex/facet colors and backtracks over individualized
    vertices; results come in a fixed deterministic order.
    """
    if (l1.n_vertices != l2.n_vertices or len(l1.facets) != len(l2.facets)
            or l1.dim != l2.dim
            or sorted(map(len, l1.facets)) != sorted(map(len, l2.facets))):
        return
    n = l1.n_vertices
    inc_v1 = [[i for i, f in enumerate(l1.facets) if v in f] for v in range(n)]
    inc_f1 = [sorted(f) for f in l1.facets]
    inc_v2 = [[i for i, f in enumerate(l2.facets) if v in f] for v in range(n)]
    inc_f2 = [sorted(f) for f in l2.facets]
    facet_set2 = set(l2.facets)

    def search(vc1, fc1, vc2, fc2):
        vc1, fc1 = _refine_colors(vc1, fc1, inc_v1, inc_f1)
        vc2, fc2 = _refine_colors(vc2, fc2, inc_v2, inc_f2)
        if sorted(vc1) != sorted(vc2) or sorted(fc1) != sorted(fc2):
            return
        classes: dict[int, list[int]] = {}
        for v in range(n):
            classes.setdefault(vc1[v], []).append(v)
        split = min((c for c in classes.values() if len(c) > 1),
                    key=lambda c: (len(c), c[0]), default=None)
        if split is None:
            by_color = {}
            ok = True
            for w in range(n):
                if vc2[w] in by_color:
                    ok = False
                    break
                by_color[vc2[w]] = w
            if not ok:
                return
            mapping = {v: by_color[vc1[v]] for v in range(n)}
            if all(frozenset(mapping[v] for v in f) in facet_set2
                   for f in l1.facets):
                yield mapping
            return
        v = split[0]
        fresh = n + max(max(vc1), max(vc2)) + 1
        for w in range(n):
            if vc2[w] != vc1[v]:
                continue
            nv1 = tuple(fresh if u == v else c for u, c in enumerate(vc1))
            nv2 = tuple(fresh if u == w else c for u, c in enumerate(vc2))
            yield from search(nv1, fc1, nv2, fc2)

    zeros_v = tuple(0 for _ in range(n))
    zeros_f1 = tuple(0 for _ in l1.facets)
    zeros_f2 = tuple(0 for _ in l2.facets)
    yield from search(zeros_v, zeros_f1, zeros_v, zeros_f2)


def combinatorially_isomorphic(l1: FaceLattice, l2: FaceLattice
                               ) -> Optional[dict[int, int]]:
    """First combinatorial isomorphism (vertex bijection), or None."""
    return next(lattice_isomorphisms(l1, l2), None)


# -- V-polytopes ------------------------------------------------------------------

class VPolytope:
    """A polytope given by an exact rational vertex matrix."""

    def __init__(self, vertices: Sequence[Sequence[Fraction]]):
        self.vertices = mat(vertices)
        if not self.vertices:
            raise ValueError("at least one vertex required")
        self._chart: Optional[AffineChart] = None
        self._facets: Optional[list[Facet]] = None
        self._lattice: Optional[FaceLattice] = None

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def chart(self) -> AffineChart:
        if self._chart is None:
            self._chart = affine_chart(self.vertices)
        return self._chart

    @property
    def dim(self) -> int:
        return self.chart.dim

    def facets(self, vertex_cap: int = DEFAULT_VERTEX_CAP,
               dim_cap: int = DEFAULT_DIM_CAP) -> list[Facet]:
        if self._facets is None:
            self._facets = facet_enumeration(self.vertices, vertex_cap, dim_cap)
        return self._facets

    def face_lattice(self) -> FaceLattice:
        if self._lattice is None:
            self._lattice = FaceLattice(
                self.n_vertices, [f.vertices for f in self.facets()])
        return self._lattice

    @property
    def f_vector(self) -> tuple[int, ...]:
        return self.face_lattice().f_vector

    def is_face(self, subset: Sequence[int]) -> bool:
        """LP test: is the subset exactly the vertex set of a face?

        Independent of the double description path (oracle pair).
        """
        inside = sorted(set(subset))
        outside = [i for i in range(self.n_vertices) if i not in set(inside)]
        return separating_functional(self.vertices, inside, outside) is not None

    def supporting_functional(self, subset: Sequence[int]):
        inside = sorted(set(subset))
        outside = [i for i in range(self.n_vertices) if i not in set(inside)]
        return separating_functional(self.vertices, inside, outside)

    def is_centrally_symmetric(self) -> Optional[Vec]:
        """Center of symmetry (the vertex barycenter) or None."""
        m = self.n_vertices
        center = tuple(sum(col, ZERO) / m for col in zip(*self.vertices))
        vertex_set = set(self.vertices)
        double_c = tuple(2 * c for c in center)
        for v in self.vertices:
            if vsub(double_c, v) not in vertex_set:
                return None
        return center

    def brute_force_faces(self, max_size: int = 8) -> set[frozenset[int]]:
        """All face vertex sets of size <= max_size, by LP over all subsets."""
        from itertools import combinations
        out = set()
        for k in range(min(max_size, self.n_vertices) + 1):
            for comb in combinations(range(self.n_vertices), k):
                if self.is_face(comb):
                    out.add(frozenset(comb))
        return out


def affinely_equivalent(p: VPolytope, q: VPolytope):
    """An exact affine isomorphism of hulls mapping P onto Q, or None.

    Searches vertex bijections compatible with a combinatorial isomorphism
    and solves for the chart-level affine map; returns the first hit as
    ``(mapping, matrix, translation)`` in the charts of p and q.
    """
    if p.dim != q.dim or p.n_vertices != q.n_vertices:
        return None
    d = p.dim
    zp, zq = p.chart.coords, q.chart.coords
    for mapping in lattice_isomorphisms(p.face_lattice(), q.face_lattice()):
        # solve A z + t = w for A (d x d) and t (d), row per vertex
        rows = []
        rhs = []
        for i in range(p.n_vertices):
            for k in range(d):
                row = [ZERO] * (d * d + d)
                for j in range(d):
                    row[k * d + j] = zp[i][j]
                row[d * d + k] = ONE
                rows.append(row)
                rhs.append(zq[mapping[i]][k])
        sol = solve(rows, rhs)
        if isinstance(sol, Infeasible):
            continue
        a_matrix = tuple(vec(sol[k * d:(k + 1) * d]) for k in range(d))
        t = vec(sol[d * d:])
        if rank(a_matrix) == d:
            return mapping, a_matrix, t
    return None


def lattice_index(points: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Elementary divisors of the vertex difference lattice, and their product.

    The product is the index of the difference lattice inside its saturation
    (affine hull intersected with the ambient integer lattice); index 1 means
    the points form an affine lattice basis of that saturation.
    """
    pts = [tuple(int(x) for x in p) for p in points]
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    divisors = [d for d in smith_normal_form(diffs) if d != 0]
    index = 1
    for d in divisors:
        index *= d
    return divisors, index
