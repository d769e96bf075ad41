"""Q*/(Q*)^2 as an F_2-vector space on the coordinates {-1} and the primes.

Elements are :class:`SquareClass` values; subgroup ranks are computed by
Gaussian elimination on integer bitsets over a basis built from the primes
that actually occur in the generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, EffortExceeded

MAX_CLOSURE_RANK = 20


@dataclass(frozen=True, order=True)
class SquareClass:
    sign: int = 1
    kernel: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        from .arith import is_prime

        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        k = tuple(self.kernel)
        object.__setattr__(self, "kernel", k)
        if any(b <= a for a, b in zip(k, k[1:])):
            raise DomainError(f"kernel must be strictly increasing: {k}")
        if not all(is_prime(p) for p in k):
            raise DomainError(f"kernel entries must be prime: {k}")

    @classmethod
    def of(cls, *primes: int, sign: int = 1) -> "SquareClass":
        """Class of ``sign * prod(primes)``; repeated primes cancel."""
        odd: set[int] = set()
        for p in primes:
            odd ^= {p}
        return cls(sign, tuple(sorted(odd)))

    @property
    def is_identity(self) -> bool:
        return self.sign == 1 and not self.kernel

    def value(self) -> int:
        """The square-free integer representing this class."""
        n = self.sign
        for p in self.kernel:
            n *= p
        return n

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return mul(self, other)

    def __str__(self) -> str:
        return f"[{self.value()}]"


IDENTITY = SquareClass()


def mul(a: SquareClass, b: SquareClass) -> SquareClass:
    return SquareClass(a.sign * b.sign, tuple(sorted(set(a.kernel) ^ set(b.kernel))))


def _to_bits(classes: Sequence[SquareClass]) -> list[int]:
    index: dict[int, int] = {}
    for c in classes:
        for p in c.kernel:
            index.setdefault(p, len(index) + 1)
    rows = []
    for c in classes:
        v = 1 if c.sign == -1 else 0
        for p in c.kernel:
            v |= 1 << index[p]
        rows.append(v)
    return rows


def _echelon(rows: Iterable[int]) -> list[int]:
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def subgroup_rank(generators: Sequence[SquareClass]) -> int:
    return len(_echelon(_to_bits(list(generators))))


def in_span(c: SquareClass, generators: Sequence[SquareClass]) -> bool:
    gens = list(generators)
    return subgroup_rank(gens + [c]) == subgroup_rank(gens)


def subgroup_members(generators: Sequence[SquareClass]) -> frozenset[SquareClass]:
    """Every element of the subgroup generated by ``generators``."""
    gens = list(generators)
    if subgroup_rank(gens) > MAX_CLOSURE_RANK:
        raise EffortExceeded(f"closure of rank > {MAX_CLOSURE_RANK} requested")
    members = {IDENTITY}
    for g in gens:
        if g not in members:
            members |= {mul(g, h) for h in members}
    return frozenset(members)
