"""Exception and warning types raised by the package."""


class SpectraError(Exception):
    """Base class for all package errors."""


class DomainError(SpectraError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConfigurationError(SpectraError, ValueError):
    """Invalid configuration, e.g. a precision below native double."""


class UnsupportedOrderError(DomainError):
    """The operator order is not covered by the requested formula."""


class NumericalError(SpectraError, ArithmeticError):
    """An iterative method failed to converge within its budget."""

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class InternalConsistencyError(SpectraError, RuntimeError):
    """Two routes that must agree did not; signals a construction bug."""


class ResourceLimitError(SpectraError, MemoryError):
    """The exact computation would exceed the configured memory guard."""


class SuspectedDoubleRootWarning(RuntimeWarning):
    """A near-zero minimum of the determinant without a sign change."""


class IndexingAnomalyWarning(RuntimeWarning):
    """Two roots mapped to the same index, or an index was skipped."""
