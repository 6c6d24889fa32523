"""Exceptions raised by the even derangement graph verifier."""

from __future__ import annotations


class EvenDerangementError(Exception):
    """Base class for all verifier errors."""


class GuardError(EvenDerangementError, ValueError):
    """An instance lies outside a documented resource guard."""


class ResourceCapError(GuardError):
    """A size cap (vertices, subsets, domain) would be exceeded."""


class SearchBudgetExceededError(EvenDerangementError):
    """A time-budgeted search passed its deadline."""


class DegreeMismatchError(EvenDerangementError, ValueError):
    """Two permutations of different degree were combined."""


class DomainMismatchError(EvenDerangementError, ValueError):
    """Two point permutations act on domains of different size."""


class IndexRangeError(EvenDerangementError, ValueError):
    """A coordinate, point or element index is out of range."""


class PreconditionError(EvenDerangementError, ValueError):
    """An input does not satisfy the hypotheses of a check."""


class DisconnectedGraphError(PreconditionError):
    """A connected graph was required."""


class CliqueConstructionError(PreconditionError):
    """Powers of the long cycle do not give a clique for this degree."""


class ConvergenceError(EvenDerangementError, ArithmeticError):
    """The Jacobi iteration did not reach the requested tolerance."""


class DegenerateBoundError(EvenDerangementError, ArithmeticError):
    """The ratio bound is undefined for the given parameters."""


class EigenbasisUnavailableError(EvenDerangementError):
    """A spectrum without eigenvectors was used where a basis is needed."""


class BFamilyError(EvenDerangementError):
    """An automorphism moved a canonical independent set outside the family."""


class BlockCoherenceError(EvenDerangementError):
    """The induced action on rows and columns is not block coherent."""


class ConfigError(EvenDerangementError, ValueError):
    """The run configuration is invalid."""
