"""Real quadratic fields Q(sqrt(d)).

Units are kept in Pell-(+-4) coordinates ``u = (x + y*sqrt(d)) / 2`` so the
half-integral units of d = 1 (mod 4) need no special casing.

Two independent routes give the square class of N(u + 1):

* ``unit``: expand the continued fraction of (b + sqrt(D)) / 2 over one
  period, build the fundamental unit and take the kernel of x + 2.
* ``genus``: (u + 1) generates an ambiguous, totally positive principal
  ideal, so its norm class lies in the group L of ambiguous ideal norms that
  are local norms everywhere (Hilbert symbols against d). When L has order 2
  the class is forced. This needs only the prime factors of d, which is what
  makes radicands of 20+ digits tractable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import arith
from .config import settings
from .errors import DomainError, EffortExceeded, NormMinusOne
from .sqclass import IDENTITY, SquareClass, subgroup_rank


@dataclass(frozen=True)
class QuadUnit:
    d: int
    x: int
    y: int
    norm: int

    def __post_init__(self) -> None:
        if self.x <= 0 or self.y <= 0:
            raise DomainError("unit must satisfy u > 1")
        if self.x * self.x - self.d * self.y * self.y != 4 * self.norm:
            raise DomainError(f"Pell identity fails for {self}")


@dataclass(frozen=True)
class QuadField:
    d: int
    D: int
    ramified: tuple[int, ...]


_units: dict[int, QuadUnit] = {}


def seed_units(units: Iterable[QuadUnit]) -> None:
    """Preload fundamental units, e.g. from an on-disk cache."""
    for u in units:
        _units.setdefault(u.d, u)


def known_units() -> dict[int, QuadUnit]:
    return dict(_units)


def _check_radicand(d: int, primes: Sequence[int] = ()) -> arith.Factorization:
    if d <= 1:
        raise DomainError(f"radicand must exceed 1, got {d}")
    f = arith.factor(d, primes)
    if any(e > 1 for _, e in f.factors):
        raise DomainError(f"{d} is not square-free")
    return f


def discriminant(d: int, primes: Sequence[int] = ()) -> int:
    _check_radicand(d, primes)
    return d if d % 4 == 1 else 4 * d


def ramified_primes(d: int, primes: Sequence[int] = ()) -> list[int]:
    f = _check_radicand(d, primes)
    ps = set(f.primes)
    if d % 4 != 1:
        ps.add(2)
    return sorted(ps)


def quad_field(d: int, primes: Sequence[int] = ()) -> QuadField:
    ram = ramified_primes(d, primes)
    return QuadField(d, d if d % 4 == 1 else 4 * d, tuple(ram))


def fundamental_unit(d: int, cf_bound: int | None = None) -> QuadUnit:
    """Fundamental unit of the maximal order of Q(sqrt(d)).

    Expands omega = (b + sqrt(D)) / 2, which is reduced and purely periodic.
    With period l and convergent denominators q_k, the unit is
    q_{l-1} * omega + q_{l-2}, of norm (-1)^l.
    """
    if d in _units:
        return _units[d]
    D = discriminant(d)
    bound = settings.cf_bound if cf_bound is None else cf_bound
    s = math.isqrt(D)
    b = s if (s - D) % 2 == 0 else s - 1
    P, Q = b, 2
    q2, q1 = 1, 0
    length = 0
    while True:
        a = (P + s) // Q
        q2, q1 = q1, a * q1 + q2
        P = a * Q - P
        Q = (D - P * P) // Q
        length += 1
        if P == b and Q == 2:
            break
        if length >= bound:
            raise EffortExceeded(f"continued fraction period of sqrt({D}) exceeds {bound}")
    x = q1 * b + 2 * q2
    y = q1 if D == d else 2 * q1
    unit = QuadUnit(d, x, y, -1 if length % 2 else 1)
    _units[d] = unit
    return unit


def norm_u_plus_one(u: QuadUnit) -> int:
    """N(u + 1) = 2 + Tr(u) = x + 2 for a unit of norm +1."""
    if u.norm != 1:
        raise NormMinusOne(f"fundamental unit of Q(sqrt({u.d})) has norm -1")
    return u.x + 2


def ambiguous_principal_genus(d: int, primes: Sequence[int] = ()) -> frozenset[SquareClass]:
    """Norm classes of ambiguous ideals lying in the principal genus.

    These are the products A of ramified primes with Hilbert symbol
    (A, d)_l = 1 at every prime l. The group has order 2^(1 + r4) where r4 is
    the 4-rank of the narrow class group.
    """
    f = _check_radicand(d, primes)
    ram = ramified_primes(d, f.primes)
    places = sorted(set(f.primes) | {2})
    chars = {q: tuple(arith.hilbert_symbol(q, d, ell) for ell in places) for q in ram}
    members = set()
    for r in range(len(ram) + 1):
        for subset in itertools.combinations(ram, r):
            ok = all(
                math.prod(chars[q][i] for q in subset) == 1 for i in range(len(places))
            )
            if ok:
                members.add(SquareClass(1, subset))
    return frozenset(members)


def a_candidates(d: int, primes: Sequence[int] = ()) -> frozenset[SquareClass]:
    """Square classes that N(u + 1) (or 1 for norm -1) can take, by genus theory.

    (sqrt d) is narrowly principal iff N(u) = -1; when N(u) = +1 the class of
    (u + 1) is neither trivial nor that of (sqrt d).
    """
    genus = ambiguous_principal_genus(d, primes)
    d_class = SquareClass(1, tuple(arith.factor(d, primes).primes))
    rest = genus - {IDENTITY, d_class}
    if d_class in genus:
        return frozenset(rest | {IDENTITY})
    if not rest:
        raise AssertionError(f"genus group of {d} has no room for N(u + 1)")
    return frozenset(rest)


def a_class(d: int, method: str = "auto", primes: Sequence[int] = ()) -> SquareClass:
    """[N(u + 1)] for the fundamental unit u if it has norm +1, else [1].

    ``method`` is ``"unit"``, ``"genus"`` or ``"auto"`` (genus when it is
    decisive, otherwise the continued fraction).
    """
    if method not in ("auto", "unit", "genus"):
        raise DomainError(f"unknown method {method!r}")
    if method != "unit":
        cands = a_candidates(d, primes)
        if len(cands) == 1:
            return next(iter(cands))
        if method == "genus":
            raise EffortExceeded(
                f"genus theory leaves {len(cands)} candidates for Q(sqrt({d}))"
            )
    f = _check_radicand(d, primes)
    u = fundamental_unit(d)
    if u.norm == -1:
        return IDENTITY
    return kernel_over(norm_u_plus_one(u), (2,) + f.primes)


def kernel_over(n: int, support: Sequence[int]) -> SquareClass:
    """Square class of ``n > 0`` when its odd-exponent primes lie in ``support``.

    (x + 2)(x - 2) = d*y^2 with gcd(x + 2, x - 2) | 4, so N(u + 1) only has
    odd exponents at primes of 2d. The leftover cofactor is checked to be a
    perfect square, so a wrong ``support`` fails loudly instead of lying.
    """
    odd = []
    for p in sorted(set(support)):
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k % 2:
            odd.append(p)
    r = math.isqrt(n)
    if r * r != n:
        raise AssertionError("cofactor is not a square; support is incomplete")
    return SquareClass(1, tuple(odd))


def resolve_ranks(
    fixed: Sequence[SquareClass],
    choices: Sequence[Iterable[SquareClass]],
) -> set[int]:
    """All subgroup ranks reachable by picking one class from each choice set."""
    return {
        subgroup_rank(list(fixed) + list(pick))
        for pick in itertools.product(*[sorted(c) for c in choices])
    }


def quad_h1_rank(d: int, primes: Sequence[int] = ()) -> int:
    D_class = arith.squarefree_kernel(discriminant(d, primes), primes)
    ranks = resolve_ranks([D_class], [a_candidates(d, primes)])
    if len(ranks) == 1:
        return ranks.pop()
    return subgroup_rank([D_class, a_class(d, "unit", primes)])


def quad_polya_rank(d: int, primes: Sequence[int] = ()) -> int:
    """Rank of Po(Q(sqrt d)) = (Z/2)^rank, from the exact sequence with all e = 2."""
    return len(ramified_primes(d, primes)) - quad_h1_rank(d, primes)


__all__ = [
    "QuadField",
    "QuadUnit",
    "a_candidates",
    "a_class",
    "ambiguous_principal_genus",
    "discriminant",
    "fundamental_unit",
    "kernel_over",
    "norm_u_plus_one",
    "quad_field",
    "quad_h1_rank",
    "quad_polya_rank",
    "ramified_primes",
    "resolve_ranks",
    "seed_units",
]
