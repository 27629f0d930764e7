"""Exception hierarchy shared by every module."""


class SyzygyError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SyzygyError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class ResourceLimitError(SyzygyError):
    """A configured search guard would be exceeded; no answer is produced."""

    def __init__(self, message: str, count: int | None = None):
        super().__init__(message)
        self.count = count


class ImpossibleConstructionError(DomainError):
    """No monomial subspace with the requested property exists."""


class VerificationError(SyzygyError, AssertionError):
    """A construction failed its own post-verification (an implementation bug)."""
