"""Exception types shared across the package."""


class CliffError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(CliffError):
    """Bad user input: malformed spec strings, files, or flag combinations."""


class ConductorCapError(CliffError):
    """A cyclotomic operation would exceed the configured conductor cap."""


class ClosureCapError(CliffError):
    """Matrix-group closure exceeded its element cap."""

    def __init__(self, message: str, partial_size: int):
        super().__init__(message)
        self.partial_size = partial_size


class EnumerationCapError(CliffError):
    """Normal-subgroup enumeration refused: group order above the cap."""


class NonUnitaryError(CliffError):
    """A generator matrix is not exactly unitary."""


class DomainError(CliffError):
    """Arguments violate a structural precondition (wrong domain, not a
    subgroup, not normal, not a constituent, selector out of range)."""


class SnapFailure(CliffError):
    """Isotypic decomposition could not be certified exactly within the
    retry budget; carries diagnostics about the failing check."""


class TheoremViolation(CliffError):
    """An identity that must hold on valid inputs failed its exact check."""
