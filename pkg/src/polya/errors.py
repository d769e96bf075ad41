"""Exception classes shared by every module."""


class PolyaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PolyaError, ValueError):
    """Input outside the mathematical domain of an operation."""


class NonResidue(DomainError):
    """The requested square root does not exist modulo the prime."""


class NotInvertible(DomainError):
    pass


class NormMinusOne(DomainError):
    """N(u + 1) was requested for a unit of norm -1."""


class TotallyRamifiedTwo(DomainError):
    """2 is totally ramified in the bi-quadratic field; H^1 may have 4-torsion."""


class Unsupported(DomainError):
    """Input is valid but outside what the formulas implemented here cover."""


class InvalidSophieGermain(DomainError):
    pass


class EffortExceeded(PolyaError):
    """A configured effort bound (rho iterations, CF period, ...) was hit."""


class SearchExhausted(PolyaError):
    """A prime scan hit its bound. Says nothing about non-existence."""
