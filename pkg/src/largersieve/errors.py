"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain (or range guard) of an operation."""


class ResourceError(RuntimeError):
    """A work or size guard was exceeded; the computation was abandoned."""


class InvariantViolation(AssertionError):
    """A checked mathematical invariant failed during a run."""
