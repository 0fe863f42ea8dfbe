"""Exception hierarchy shared by every layer of the package."""


class GrowthError(Exception):
    """Base class for all errors raised by relgrowth."""


class DomainError(GrowthError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class Overflow(GrowthError, OverflowError):
    """A value cannot be represented as a plain float."""


class PoleError(DomainError):
    """Evaluation requested at (or numerically at) a pole."""


class PoleOnCircle(DomainError):
    """A pole lies on the circle |z| = r."""


class OnCircle(DomainError):
    """An a-point lies on the counting contour."""


class NonIntegralWinding(GrowthError):
    """Adaptive argument tracking did not produce an integral winding number."""


class SingularNode(DomainError):
    """A logarithmic singularity sits on the integration contour."""


class NonConvergent(GrowthError):
    """An iterative numerical procedure hit its refinement cap."""


class BelowDomain(DomainError):
    """Scale evaluated below its domain threshold x0."""


class BelowRange(DomainError):
    """Scale inverse requested below the scale's range."""


class NonLevelZero(DomainError):
    """A quadrature-backed scale was asked for a radius beyond float range."""


class DegenerateGrid(DomainError):
    """Grid too short for tail-window estimation."""


class BadBracket(GrowthError):
    """Transition endpoints do not classify as Diverges / Converges."""


class ModelError(GrowthError):
    """Operation not supported for the given function model."""


class ParseError(GrowthError):
    """Malformed model or scale literal, or malformed config."""
