"""Exception hierarchy.

Group-axiom failures carry the offending element indices so a bad table can be
fixed by hand. Resource caps are a separate branch: callers that aggregate
verdicts (the claim suites, the CLI) turn them into "inconclusive", never into
a pass.
"""

from __future__ import annotations


class MagnusError(Exception):
    """Base class for every error raised by this package."""


class GroupAxiomError(MagnusError, ValueError):
    pass


class InvalidTable(GroupAxiomError):
    pass


class NoIdentity(GroupAxiomError):
    pass


class NotLatinSquare(GroupAxiomError):
    def __init__(self, kind: str, index: int, value: int):
        self.kind, self.index, self.value = kind, index, value
        super().__init__(f"{kind} {index} repeats entry {value}")


class NonAssociative(GroupAxiomError):
    def __init__(self, a: int, b: int, c: int):
        self.triple = (a, b, c)
        super().__init__(f"(x*y)*z != x*(y*z) for (x, y, z) = ({a}, {b}, {c})")


class InvalidPermutation(GroupAxiomError):
    pass


class InvalidHomomorphism(MagnusError, ValueError):
    pass


class ResourceCapError(MagnusError):
    """A configured size cap was hit; the computation is inconclusive."""


class ClosureCapExceeded(ResourceCapError):
    pass


class OrderCapExceeded(ResourceCapError):
    pass


class LatticeCapExceeded(ResourceCapError):
    pass


class SubgroupCountCapExceeded(ResourceCapError):
    pass


class SearchBudgetExceeded(ResourceCapError):
    pass


class NotNormal(MagnusError, ValueError):
    pass


class NotMonolithic(MagnusError, ValueError):
    pass


class NotSolvable(MagnusError, ValueError):
    pass


class NotPrimePower(MagnusError, ValueError):
    pass


class UnknownAtom(MagnusError, ValueError):
    pass


class ParameterError(MagnusError, ValueError):
    pass


class ExprSyntaxError(MagnusError, ValueError):
    """Parse failure in a group expression; ``position`` is a byte offset."""

    def __init__(self, position: int, expected: set[str] | frozenset[str], text: str = ""):
        self.position = position
        self.expected = frozenset(expected)
        self.text = text
        want = ", ".join(sorted(self.expected)) or "end of input"
        super().__init__(f"syntax error at offset {position}: expected {want}")


class ArityError(MagnusError, ValueError):
    def __init__(self, name: str, expected: str, got: int, position: int = 0):
        self.name, self.expected, self.got, self.position = name, expected, got, position
        super().__init__(f"{name} takes {expected} argument(s), got {got} (offset {position})")
