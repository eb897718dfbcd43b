"""Permutations of {1..n} with cycle notation.

A permutation is stored by its image tuple: ``images[i-1]`` is the image of
the point ``i``.  Products are composed left to right, ``p * q`` means "apply
``p`` first, then ``q``"; with the row convention ``matrix(p)[i][p(i)] = 1``
this makes ``matrix(p * q) = matrix(p) @ matrix(q)``.

Cycle-notation grammar (ASCII, 1-based points)::

    perm  := cycle*
    cycle := '(' int (' '+ int)* ')'

The printed form uses single spaces and lists cycles by ascending smallest
entry; the identity prints as the empty string.
"""

from __future__ import annotations

import re
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import CycleSyntaxError, OutOfRangeError, RepeatedPointError

_TOKEN = re.compile(r"\s*(\(|\)|\d+)")


@total_ordering
class Permutation:
    """An element of the symmetric group on {1..n}.

    >>> p = Permutation((2, 3, 1, 5, 4, 6))
    >>> str(p)
    '(1 2 3)(4 5)'
    >>> p(1), p(6)
    (2, 6)
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {images}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # self first, then other
        if other.degree != self.degree:
            raise ValueError("degree mismatch in product")
        o = other.images
        return Permutation(tuple(o[i - 1] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycle decomposition, cycles of length >= 2 only.

        Cycles are listed by ascending smallest entry and each starts at its
        smallest entry; the product of the returned cycles is ``self``.
        """
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            if len(cyc) >= 2:
                out.append(tuple(cyc))
        return out

    def support(self) -> frozenset[int]:
        """Non-fixed points."""
        return frozenset(i for i, j in enumerate(self.images, start=1) if i != j)

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """0/1 permutation matrix, row i has its 1 in column self(i)."""
        n = self.degree
        return tuple(
            tuple(1 if self.images[i] == j + 1 else 0 for j in range(n))
            for i in range(n)
        )

    def matrix_flat(self) -> tuple[int, ...]:
        """Row-major flattening of :meth:`matrix` (length n^2)."""
        n = self.degree
        row = [0] * (n * n)
        for i, j in enumerate(self.images):
            row[i * n + (j - 1)] = 1
        return tuple(row)

    def cycle_string(self) -> str:
        """Canonical cycle-notation text; empty string for the identity."""
        return "".join(
            "(" + " ".join(str(x) for x in cyc) + ")" for cyc in self.cycles()
        )

    def __str__(self) -> str:
        return self.cycle_string() or "()"

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, n={self.degree})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    @staticmethod
    def parse(text: str, n: int) -> "Permutation":
        return parse_cycles(text, n)


def identity(n: int) -> Permutation:
    return Permutation(range(1, n + 1))


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse a product of pairwise disjoint cycles over {1..n}.

    Points not mentioned are fixed; the empty string is the identity.
    Singleton cycles like ``(5)`` are accepted as explicit fixed points.

    >>> parse_cycles("(1 2 3)(4 5)", 6).images
    (2, 3, 1, 5, 4, 6)
    """
    if n < 1:
        raise OutOfRangeError("degree must be a positive integer")
    pos = 0
    cycles: list[list[int]] = []
    used: set[int] = set()
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.group(1) != "(":
            raise CycleSyntaxError(f"expected '(' at position {pos}: {text!r}")
        pos = m.end()
        cyc: list[int] = []
        while True:
            m = _TOKEN.match(text, pos)
            if m is None:
                raise CycleSyntaxError(f"unclosed cycle in {text!r}")
            tok = m.group(1)
            pos = m.end()
            if tok == ")":
                break
            if tok == "(":
                raise CycleSyntaxError(f"nested '(' in {text!r}")
            point = int(tok)
            if point < 1 or point > n:
                raise OutOfRangeError(f"point {point} outside 1..{n}")
            if point in used:
                raise RepeatedPointError(f"point {point} appears twice")
            used.add(point)
            cyc.append(point)
        if not cyc:
            raise CycleSyntaxError("empty cycle '()'")
        cycles.append(cyc)
    images = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b
    return Permutation(images)


def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Permutation:
    """Build a permutation from disjoint cycles given as point sequences."""
    text = "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)
    return parse_cycles(text, n)
