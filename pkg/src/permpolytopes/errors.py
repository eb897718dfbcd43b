"""Exception types shared across the package."""


class PermPolytopeError(Exception):
    """Base class for all errors raised by this package."""


class CycleSyntaxError(PermPolytopeError, ValueError):
    """Malformed cycle-notation text."""


class OutOfRangeError(PermPolytopeError, ValueError):
    """A point lies outside {1..n}."""


class RepeatedPointError(PermPolytopeError, ValueError):
    """A point occurs twice in one cycle expression."""


class CapExceededError(PermPolytopeError):
    """A configured size cap (group order, vertex count, ...) was exceeded."""


class NotAMemberError(PermPolytopeError, ValueError):
    """An element was expected to lie in a given group but does not."""


class IdentityInputError(PermPolytopeError, ValueError):
    """The identity is not a valid input for this operation."""


class DegreeMismatchError(PermPolytopeError, ValueError):
    """Permutations or groups of incompatible degree were combined."""


class DimensionMismatchError(PermPolytopeError, ValueError):
    """Matrix or vector dimensions are inconsistent."""


class NotASubgroupError(PermPolytopeError, ValueError):
    """The given element set is not a subgroup of the ambient group."""


class NotCentrallySymmetricError(PermPolytopeError, ValueError):
    """Operation requires a centrally symmetric permutation polytope."""


class NotAPowerOfTwoError(PermPolytopeError, ValueError):
    """Crosspolytope dimension must be a power of two."""


class UnknownNameError(PermPolytopeError, KeyError):
    """Unknown key in a reference catalog."""


class InvalidFaceError(PermPolytopeError, ValueError):
    """The designated vertex set is not a face of the given lattice."""
