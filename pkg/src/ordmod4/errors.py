"""Exception types shared across the package."""


class Ordmod4Error(Exception):
    """Base class for all package errors."""

    exit_code = 1


class PreconditionError(Ordmod4Error, ValueError):
    """An argument violates a documented precondition."""


class DomainError(Ordmod4Error, ValueError):
    """The input is outside the mathematical domain of the operation."""


class ResourceError(Ordmod4Error, MemoryError):
    """A requested table or sieve exceeds the configured memory budget."""

    exit_code = 3


class OrderCheckError(Ordmod4Error, AssertionError):
    """A sampled multiplicative order failed its independent re-check."""

    exit_code = 2
