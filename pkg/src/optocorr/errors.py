"""Exception taxonomy for the package.

Every error a caller can hit maps to exactly one class here; the CLI
assigns each class a distinct exit code (see cli.EXIT_CODES).
"""


class OptocorrError(Exception):
    """Base class for all package errors."""


class ParseError(OptocorrError):
    """Malformed configuration document (syntax level)."""


class UnitError(OptocorrError):
    """A quantity string could not be interpreted in the documented units."""


class UnknownKey(OptocorrError):
    """Unknown or missing configuration key."""


class InvalidSpec(OptocorrError):
    """A sweep specification violates its invariants."""


class UnknownPreset(OptocorrError):
    """Figure preset name not recognized."""


class NonPhysicalInput(OptocorrError):
    """A covariance matrix violates physicality beyond numerical tolerance."""


class DomainError(OptocorrError):
    """Entropy function argument below the physical floor."""


class DegenerateMeasuredMode(OptocorrError):
    """Measured-mode block determinant at or below the vacuum floor."""


class UnstableDrift(OptocorrError):
    """Drift matrix has no decaying steady state."""


class SingularSystem(OptocorrError):
    """The vectorized steady-state linear system could not be factorized."""


class ToleranceNotMet(OptocorrError):
    """Adaptive quadrature stalled before reaching the requested tolerance."""


class NotBracketed(OptocorrError):
    """Threshold search target is not bracketed inside the sweep range."""


class UnstablePoint(OptocorrError):
    """A single sweep point has an unstable drift (flagged, not fatal)."""
