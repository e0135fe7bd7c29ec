"""Exception types shared across the package."""


class BzinfoError(Exception):
    """Base class for all package errors."""


class DomainError(BzinfoError, ValueError):
    """An argument is outside its documented domain."""


class PositivityError(DomainError):
    """A constructed measurement effect failed positive semidefiniteness."""


class NumericalError(BzinfoError, ArithmeticError):
    """A numerical routine violated its accuracy contract."""


class SchemaError(BzinfoError, ValueError):
    """Serialized data is malformed or fails re-validation."""


class VerificationError(BzinfoError, ValueError):
    """A measurement family failed verification where a valid one is required."""
