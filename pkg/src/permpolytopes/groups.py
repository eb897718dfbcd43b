"""Permutation groups at desk scale: closure, subelements, constructions.

Groups are stored by their full element list in canonical order
(lexicographic by image tuple, which puts the identity first).  All values
are immutable; operations are pure functions.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceededError,
    DegreeMismatchError,
    IdentityInputError,
    NotAMemberError,
    NotASubgroupError,
)
from .perms import Permutation, from_cycles, identity, parse_cycles

DEFAULT_ORDER_CAP = 10_000
DEFAULT_ISO_CAP = 256
DEFAULT_SUBGROUP_CAP = 100


class PermutationGroup:
    """A subgroup of S_n given by generators plus its full element list."""

    __slots__ = ("degree", "generators", "elements", "_index")

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: Sequence[Permutation]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self._index = {p: i for i, p in enumerate(self.elements)}
        if not self.elements or not self.elements[0].is_identity():
            raise ValueError("element list must contain the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def __contains__(self, p: Permutation) -> bool:
        return p in self._index

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PermutationGroup)
                and self.degree == other.degree
                and self.elements == other.elements)

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "e"
        return f"<group of order {self.order} on {self.degree} points: {gens}>"

    def index(self, p: Permutation) -> int:
        """Position of ``p`` in the canonical element order."""
        try:
            return self._index[p]
        except KeyError:
            raise NotAMemberError(f"{p} is not in the group") from None

    def orbits(self) -> list[frozenset[int]]:
        """Orbits on {1..n}, sorted by smallest point (singletons included)."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                x = frontier.pop()
                for g in self.generators:
                    y = g(x)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            seen |= orbit
            out.append(frozenset(orbit))
        return out

    # -- subgroup machinery ------------------------------------------------

    def subgroup_from_elements(self, elems: Iterable[Permutation]) -> "PermutationGroup":
        """Wrap a closed element subset as a group; raises if not a subgroup."""
        elems = sorted(set(elems))
        elem_set = set(elems)
        for p in elems:
            if p not in self._index:
                raise NotASubgroupError(f"{p} is not in the ambient group")
            if p.inverse() not in elem_set:
                raise NotASubgroupError("set is not closed under inverses")
        for p in elems:
            for q in elems:
                if p * q not in elem_set:
                    raise NotASubgroupError("set is not closed under products")
        gens = _reduce_generators(elems, self.degree)
        return PermutationGroup(self.degree, gens, elems)

    def stabilizer(self, blocks: Sequence[Iterable[int]]) -> "PermutationGroup":
        """Setwise stabilizer of a partition of {1..n}.

        ``blocks`` must be disjoint nonempty subsets covering {1..n}.
        """
        sets = [frozenset(b) for b in blocks]
        union: set[int] = set()
        for b in sets:
            if not b or union & b:
                raise ValueError("blocks must be disjoint and nonempty")
            union |= b
        if union != set(range(1, self.degree + 1)):
            raise ValueError("blocks must cover {1..n}")
        elems = [g for g in self.elements
                 if all(frozenset(g(x) for x in b) == b for b in sets)]
        gens = _reduce_generators(elems, self.degree)
        return PermutationGroup(self.degree, gens, elems)

    def subgroups(self, cap: int = DEFAULT_SUBGROUP_CAP) -> list["PermutationGroup"]:
        """All subgroups, via cyclic subgroups and join closure."""
        if self.order > cap:
            raise CapExceededError(f"group order {self.order} exceeds cap {cap}")
        cyclic: set[frozenset[Permutation]] = set()
        for g in self.elements:
            sub = {self.identity}
            p = g
            while not p.is_identity():
                sub.add(p)
                p = p * g
            cyclic.add(frozenset(sub))
        known = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            new: list[frozenset[Permutation]] = []
            for a in frontier:
                for b in cyclic:
                    if b <= a:
                        continue
                    joined = frozenset(_closure(list(a | b), self.degree, self.order))
                    if joined not in known:
                        known.add(joined)
                        new.append(joined)
            frontier = new
        subs = [self.subgroup_from_elements(s) for s in known]
        subs.sort(key=lambda h: (h.order, [p.images for p in h.elements]))
        return subs


def _closure(gens: Sequence[Permutation], n: int, cap: int) -> list[Permutation]:
    e = identity(n)
    elems = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p * g
                if q not in elems:
                    if len(elems) >= cap:
                        raise CapExceededError(f"closure exceeds cap {cap}")
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(elems)


def _reduce_generators(elems: Sequence[Permutation], n: int) -> list[Permutation]:
    """Small generating list for a closed element set (greedy)."""
    target = set(elems)
    gens: list[Permutation] = []
    have = {identity(n)}
    for p in sorted(target):
        if p not in have:
            gens.append(p)
            have = set(_closure(gens, n, len(target)))
            if have == target:
                break
    return gens


def generate_group(gens: Sequence[Permutation], n: int,
                   cap: int = DEFAULT_ORDER_CAP) -> PermutationGroup:
    """Smallest subgroup of S_n containing ``gens``.

    >>> generate_group([parse_cycles("(1 2)", 4), parse_cycles("(3 4)", 4)], 4).order
    4
    """
    for g in gens:
        if g.degree != n:
            raise DegreeMismatchError(f"generator degree {g.degree} != {n}")
    elems = _closure(gens, n, cap)
    return PermutationGroup(n, [g for g in gens if not g.is_identity()], elems)


def group_from_cycle_strings(gen_texts: Sequence[str], n: int,
                             cap: int = DEFAULT_ORDER_CAP) -> PermutationGroup:
    return generate_group([parse_cycles(t, n) for t in gen_texts], n, cap)


# -- subelements ------------------------------------------------------------

def subelements(g: Permutation, group: PermutationGroup) -> list[Permutation]:
    """All h in the group that are products of a subset of g's disjoint cycles.

    Always contains the identity and g itself; canonically ordered.
    """
    if g not in group:
        raise NotAMemberError(f"{g} is not in the group")
    cycles = g.cycles()
    n = group.degree
    found = set()
    for r in range(len(cycles) + 1):
        for subset in combinations(cycles, r):
            h = from_cycles(subset, n)
            if h in group:
                found.add(h)
    return sorted(found)


def is_indecomposable(g: Permutation, group: PermutationGroup) -> bool:
    """True iff e and g are the only subelements of g in the group."""
    if g.is_identity():
        raise IdentityInputError("the identity is neither decomposable nor not")
    return len(subelements(g, group)) == 2


# -- constructions ----------------------------------------------------------

def regular_representation(group: PermutationGroup) -> PermutationGroup:
    """The group acting on its own element list by right multiplication."""
    elems = group.elements
    pos = {p: i for i, p in enumerate(elems)}

    def reg(g: Permutation) -> Permutation:
        return Permutation(tuple(pos[x * g] + 1 for x in elems))

    return PermutationGroup(
        len(elems),
        [reg(g) for g in group.generators],
        [reg(g) for g in elems],
    )


def _pad(p: Permutation, before: int, after: int) -> Permutation:
    images = (tuple(range(1, before + 1))
              + tuple(x + before for x in p.images)
              + tuple(range(before + p.degree + 1, before + p.degree + after + 1)))
    return Permutation(images)


def embed_product(g1: PermutationGroup, g2: PermutationGroup,
                  mode: str = "disjoint") -> PermutationGroup:
    """Combine two groups on disjoint point sets.

    ``disjoint``: all pairs (a, b) acting on m+n points, order |G1|*|G2|.
    ``diagonal``: requires G1 == G2; the elements (a, a), order |G1|.
    """
    m, n = g1.degree, g2.degree
    if mode == "disjoint":
        elems = [_pad(a, 0, n) * _pad(b, m, 0) for a in g1.elements for b in g2.elements]
        gens = ([_pad(a, 0, n) for a in g1.generators]
                + [_pad(b, m, 0) for b in g2.generators])
        return PermutationGroup(m + n, gens, elems)
    if mode == "diagonal":
        if g1 != g2:
            raise DegreeMismatchError("diagonal embedding requires identical groups")
        elems = [_pad(a, 0, n) * _pad(a, m, 0) for a in g1.elements]
        gens = [_pad(a, 0, n) * _pad(a, m, 0) for a in g1.generators]
        return PermutationGroup(2 * n, gens, elems)
    raise ValueError(f"unknown mode {mode!r}")


def pyramid_group(group: PermutationGroup) -> tuple[PermutationGroup, list[Permutation]]:
    """Extend the diagonal double of a group by the block-swap involution.

    Returns (E, S) where E <= S_{2n} has order 2|G| and S is the subset whose
    induced face of the polytope of E is a pyramid over the polytope of G.
    """
    n = group.degree
    diag = embed_product(group, group, "diagonal")
    p = Permutation(tuple(range(n + 1, 2 * n + 1)) + tuple(range(1, n + 1)))
    elems = list(diag.elements) + [d * p for d in diag.elements]
    extended = PermutationGroup(2 * n, list(diag.generators) + [p], elems)
    return extended, sorted(list(diag.elements) + [p])


# -- isomorphisms ------------------------------------------------------------

def isomorphisms(g1: PermutationGroup, g2: PermutationGroup,
                 cap: int = DEFAULT_ISO_CAP) -> Iterator[dict[Permutation, Permutation]]:
    """Yield every group isomorphism G1 -> G2, deterministically ordered.

    Backtracks over images of a fixed generating sequence, pruned by element
    orders; each yielded dict maps every element of G1 to its image.
    """
    if g1.order != g2.order:
        return
    if g1.order > cap:
        raise CapExceededError(f"order {g1.order} exceeds isomorphism cap {cap}")
    if sorted(p.order() for p in g1.elements) != sorted(p.order() for p in g2.elements):
        return

    gens: list[Permutation] = []
    have = {g1.identity}
    for p in g1.elements:
        if p not in have:
            gens.append(p)
            have = set(_closure(gens, g1.degree, g1.order))
            if len(have) == g1.order:
                break

    orders = {g: g.order() for g in gens}
    by_order: dict[int, list[Permutation]] = {}
    for q in g2.elements:
        by_order.setdefault(q.order(), []).append(q)

    def extend(partial: dict[Permutation, Permutation], k: int):
        if k == len(gens):
            yield dict(partial)
            return
        g = gens[k]
        for q in by_order.get(orders[g], []):
            new = _extend_homomorphism(partial, g, q, g1, g2)
            if new is not None:
                yield from extend(new, k + 1)

    e_map = {g1.identity: g2.identity}
    for iso in extend(e_map, 0):
        if len(iso) == g1.order and len(set(iso.values())) == g2.order:
            yield iso


def _extend_homomorphism(partial: dict[Permutation, Permutation],
                         g: Permutation, q: Permutation,
                         g1: PermutationGroup, g2: PermutationGroup):
    """Extend an injective partial homomorphism by g -> q, or return None."""
    new = dict(partial)
    used = set(new.values())
    if g in new:
        return new if new[g] == q else None
    if q in used:
        return None
    new[g] = q
    used.add(q)
    frontier = [g]
    while frontier:
        x = frontier.pop()
        for y in list(new.keys()):
            for a, b in ((x * y, new[x] * new[y]), (y * x, new[y] * new[x])):
                if a in new:
                    if new[a] != b:
                        return None
                else:
                    if b in used:
                        return None
                    new[a] = b
                    used.add(b)
                    frontier.append(a)
    return new


# -- representations ---------------------------------------------------------

class PermRepresentation:
    """A permutation representation of a base group.

    ``images[i]`` is the image of ``base.elements[i]``; the map is verified
    to be a homomorphism on construction.
    """

    __slots__ = ("base", "degree", "images")

    def __init__(self, base: PermutationGroup, images: Sequence[Permutation],
                 _trusted: bool = False):
        images = tuple(images)
        if len(images) != base.order:
            raise ValueError("one image per group element required")
        self.base = base
        self.degree = images[0].degree if images else 0
        self.images = images
        if not _trusted:
            idx = base._index
            for i, x in enumerate(base.elements):
                for j, y in enumerate(base.elements):
                    if images[idx[x * y]] != images[i] * images[j]:
                        raise ValueError("images do not define a homomorphism")

    @staticmethod
    def natural(group: PermutationGroup) -> "PermRepresentation":
        return PermRepresentation(group, group.elements, _trusted=True)

    @staticmethod
    def regular(group: PermutationGroup) -> "PermRepresentation":
        pos = {p: i for i, p in enumerate(group.elements)}

        def image(g: Permutation) -> Permutation:
            return Permutation(tuple(pos[x * g] + 1 for x in group.elements))

        return PermRepresentation(group, [image(g) for g in group.elements],
                                  _trusted=True)

    @staticmethod
    def from_generator_images(base: PermutationGroup,
                              pairs: Sequence[tuple[Permutation, Permutation]],
                              ) -> "PermRepresentation":
        """Extend generator images to the whole group; raises if inconsistent."""
        partial: dict[Permutation, Permutation] = {}
        n_target = pairs[0][1].degree if pairs else base.degree
        partial[base.identity] = identity(n_target)
        for g, img in pairs:
            if g not in base:
                raise NotAMemberError(f"{g} is not in the base group")
            ext = _extend_image_map(partial, g, img, base)
            if ext is None:
                raise ValueError("generator images do not define a homomorphism")
            partial = ext
        if len(partial) != base.order:
            raise ValueError("generator images do not cover the base group")
        return PermRepresentation(
            base, [partial[g] for g in base.elements], _trusted=True)

    def is_faithful(self) -> bool:
        return len(set(self.images)) == self.base.order

    def image_group(self) -> PermutationGroup:
        elems = sorted(set(self.images))
        return PermutationGroup(self.degree, _reduce_generators(elems, self.degree), elems)

    def compose(self, iso: dict[Permutation, Permutation],
                source: PermutationGroup) -> "PermRepresentation":
        """Pull back along an isomorphism source -> self.base."""
        idx = self.base._index
        return PermRepresentation(
            source, [self.images[idx[iso[a]]] for a in source.elements],
            _trusted=True)


def _extend_image_map(partial, g, img, base):
    """Like _extend_homomorphism but images need not be injective."""
    new = dict(partial)
    if g in new:
        return new if new[g] == img else None
    new[g] = img
    frontier = [g]
    while frontier:
        x = frontier.pop()
        for y in list(new.keys()):
            for a, b in ((x * y, new[x] * new[y]), (y * x, new[y] * new[x])):
                if a in new:
                    if new[a] != b:
                        return None
                else:
                    new[a] = b
                    frontier.append(a)
    return new
