"""Polya groups of real quadratic, bi-quadratic and simplest cubic fields."""

from .errors import (
    DomainError,
    EffortExceeded,
    InvalidSophieGermain,
    NonResidue,
    NormMinusOne,
    NotInvertible,
    PolyaError,
    SearchExhausted,
    TotallyRamifiedTwo,
    Unsupported,
)

__version__ = "0.1.0"
