"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: DomainError -> 2, ResourceCapError -> 3,
ValidationFailure -> 4.
"""


class DomainError(ValueError):
    """An argument violates a documented precondition."""


class UnsupportedCaseError(DomainError):
    """The operation is well-posed only for a narrower input class."""


class ResourceCapError(RuntimeError):
    """A computation would exceed the configured amplitude cap."""


class ValidationFailure(RuntimeError):
    """Cross-validation between the two pipelines exceeded tolerance."""
