"""Exception types shared across the package."""


class DomainError(ValueError):
    """A well-formed input that lies outside the mathematical domain of an operation."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; signals a modelling bug rather than bad input."""
