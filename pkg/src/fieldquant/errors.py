"""Exception hierarchy shared by all modules."""


class FieldQuantError(Exception):
    """Base class for library errors."""


class ConfigurationError(FieldQuantError):
    """Operands built on incompatible mode sets, or an invalid letter map."""


class DataError(FieldQuantError):
    """Input data violating a structural requirement (e.g. non-Hermitian brackets)."""


class DomainError(FieldQuantError, ValueError):
    """Argument outside the domain of an operation (non-light-like k, non-PD matrix)."""


class PreconditionError(FieldQuantError, ValueError):
    """A documented precondition of the operation does not hold."""


class UnsupportedObservable(FieldQuantError, TypeError):
    """Poisson brackets are only implemented for linear observables."""
