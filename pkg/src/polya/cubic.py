"""Shanks' simplest cubic fields K_n, split by X^3 + (n+3)X^2 + nX - 1.

When h(n) = n^2 + 3n + 9 is square-free the discriminant is h(n)^2, the
ramified primes are exactly the primes of h(n), and the Polya group of the
cyclic cubic field has order 3^(r - 1) for r ramified primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import arith
from .config import settings
from .errors import DomainError, SearchExhausted, Unsupported


def h_value(n: int) -> int:
    return n * n + 3 * n + 9


@dataclass(frozen=True)
class SimplestCubic:
    n: int
    hn: int
    squarefree: bool
    ramified: tuple[int, ...] | None = None

    @property
    def r_K(self) -> int | None:
        return None if self.ramified is None else len(self.ramified)

    @property
    def po_order(self) -> int | None:
        return None if self.ramified is None else 3 ** (len(self.ramified) - 1)


def simplest_cubic(n: int) -> SimplestCubic:
    if n < -1:
        raise DomainError(f"parameter must be >= -1, got {n}")
    hn = h_value(n)
    f = arith.factor(hn)
    sf = all(e == 1 for _, e in f.factors)
    return SimplestCubic(n, hn, sf, f.primes if sf else None)


def _require_squarefree(n: int) -> SimplestCubic:
    K = simplest_cubic(n)
    if not K.squarefree:
        raise Unsupported(f"h({n}) = {K.hn} is not square-free; conductor not computed")
    return K


def discriminant_simplest_cubic(n: int) -> int:
    return _require_squarefree(n).hn ** 2


def polya_order_cubic(n: int) -> int:
    return _require_squarefree(n).po_order


def root_of_h_mod_p(p: int) -> int:
    """A root of h modulo a prime p with (-3/p) = 1, namely (3a - 3)/2 with a^2 = -3."""
    if p in (2, 3) or not arith.is_prime(p):
        raise DomainError(f"need a prime other than 2 and 3, got {p}")
    a = arith.sqrt_mod_prime(-3, p)
    b = arith.inv_mod(2, p)
    x = (-3 * b + 3 * a * b) % p
    if h_value(x) % p or x % p == 0:
        raise AssertionError(f"{x} is not a unit root of h mod {p}")
    return x


@dataclass(frozen=True)
class CubicCertificate:
    M: float
    t: int
    auxiliary_primes: tuple[int, ...]
    x0: int
    modulus: int
    p: int
    hn_factors: arith.Factorization
    po_lower_bound: int
    scanned: int = field(default=0, compare=False)

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "t": self.t,
            "auxiliary_primes": list(self.auxiliary_primes),
            "x0": self.x0,
            "modulus": self.modulus,
            "p": self.p,
            "h_p": self.hn_factors.value,
            "h_p_factors": [[q, e] for q, e in self.hn_factors.factors],
            "po_order": 3 ** (len(self.hn_factors.factors) - 1),
            "po_lower_bound": self.po_lower_bound,
        }


def auxiliary_count(M: float) -> int:
    """Smallest t >= 1 with 3^(t-1) > M."""
    if not M > 0:
        raise DomainError(f"M must be positive, got {M}")
    t = 1
    while 3 ** (t - 1) <= M:
        t += 1
    return t


def split_primes(t: int) -> list[int]:
    """The t smallest primes = 1 (mod 3), i.e. those with (-3/p) = 1."""
    out, p = [], 7
    while len(out) < t:
        if arith.is_prime(p):
            out.append(p)
        p += 6
    return out


def find_large_polya_cubic(M: float, search_bound: int | None = None) -> CubicCertificate:
    """Smallest prime p with |Po(K_p)| >= 3^(t-1) > M forced by CRT.

    ``search_bound`` caps how many primes of the progression are tried.
    """
    t = auxiliary_count(M)
    aux = split_primes(t)
    x0, modulus = arith.crt((root_of_h_mod_p(q), q) for q in aux)
    bound = settings.search_bound if search_bound is None else search_bound
    p = 1
    for tried in range(1, bound + 1):
        p = arith.next_prime_in_ap(x0, modulus, p)
        hp = h_value(p)
        f = arith.factor(hp, aux)
        if all(e == 1 for _, e in f.factors):
            return CubicCertificate(M, t, tuple(aux), x0, modulus, p, f, 3 ** (t - 1), tried)
    raise SearchExhausted(f"no prime = {x0} mod {modulus} with square-free h among {bound} tried")


def check_certificate(cert: CubicCertificate) -> list[str]:
    """Independent re-check; returns a list of failures (empty when valid)."""
    problems = []
    if not arith.is_prime(cert.p):
        problems.append("p is not prime")
    hp = h_value(cert.p)
    if hp != cert.hn_factors.value:
        problems.append("h(p) mismatch")
    f = arith.factor(hp)
    if any(e > 1 for _, e in f.factors):
        problems.append("h(p) is not square-free")
    if math.prod(q**e for q, e in f.factors) != hp:
        problems.append("factorization does not multiply out")
    for q in cert.auxiliary_primes:
        if not arith.is_prime(q) or hp % q:
            problems.append(f"auxiliary prime {q} does not divide h(p)")
    if cert.p % cert.modulus != cert.x0 % cert.modulus:
        problems.append("p is not in the CRT class")
    order = 3 ** (len(f.factors) - 1)
    if not (order >= cert.po_lower_bound == 3 ** (cert.t - 1) and cert.po_lower_bound > cert.M):
        problems.append("Polya order bound fails")
    return problems
