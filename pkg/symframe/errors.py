"""Exceptions and warning categories raised by symframe."""

from typing import Optional


class SymframeError(Exception):
    """Base class for every domain error raised by symframe."""


class InvalidInput(SymframeError, ValueError):
    """An input object violates one of its invariants."""


class NotIsostatic(SymframeError):
    """The graph is not generically isostatic in the plane."""


class TieDownDivisionFailed(SymframeError):
    """The tied-down determinant was not divisible by the tie-down factor."""


class FactorisationMismatch(SymframeError):
    """A factor list does not multiply back to its input polynomial."""


class ResourceLimitExceeded(SymframeError):
    """A desk-scale cap was exceeded."""


class AutGroupTooLarge(ResourceLimitExceeded):
    """The automorphism group is larger than the enumeration cap."""


class OrbitProductTooLarge(ResourceLimitExceeded):
    """Too many selection functions for the weakly localised span."""


class PolynomialTooLarge(ResourceLimitExceeded):
    """The symbolic determinant would be too large to expand."""


class NonIntegralCoefficient(SymframeError):
    """A character decomposition produced a non-integer multiplicity."""


class NoRealPointFound(SymframeError):
    """Variety sampling found no real point within the retry cap."""


class SingularSystem(SymframeError):
    """The interior equilibrium system of a rubber-band problem is singular."""


class Infeasible(SymframeError):
    """A linear system has no solution.

    Attributes:
        residual: Least-squares residual norm of the best approximate solution
    """

    def __init__(self, message: str, residual: Optional[float] = None):
        super().__init__(message)
        self.residual = residual


class NotASelfStress(SymframeError):
    """A coefficient vector fails the equilibrium condition."""


class NonPlanarInput(SymframeError):
    """A drawing has crossings or overlaps where a plane embedding is needed."""


class ExactnessDowngradeWarning(UserWarning):
    """Rational input was converted to floating mode."""


class CoincidentPointsWarning(UserWarning):
    """A configuration has coincident points."""


class PlanarityWarning(UserWarning):
    """Advisory graph-theoretic precondition failed (planarity, connectivity)."""
