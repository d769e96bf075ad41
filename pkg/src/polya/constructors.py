"""Executable versions of the constructive existence arguments.

* :func:`crt_prime_tuple` builds primes r_1..r_t = 1 (mod 8pq) that are
  pairwise quadratic non-residues, one CRT step at a time.
* :func:`verify_theorem_biquad` checks that K_{m,p} and K_{m,p-1} with
  m = r_1...r_t both have Polya group (Z/2)^(t-1).
* :func:`verify_theorem_cubic` re-checks a cubic certificate from scratch.

Every choice is the smallest admissible one, so certificates are reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import arith, biquad, cubic, quadfield
from .errors import DomainError, InvalidSophieGermain
from .sqclass import SquareClass, subgroup_members


@dataclass(frozen=True)
class TupleCertificate:
    t: int
    p: int
    q: int
    primes: tuple[int, ...]
    transcript: tuple[dict, ...] = field(default=(), compare=False)

    @property
    def m(self) -> int:
        return math.prod(self.primes)

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "p": self.p,
            "q": self.q,
            "r": list(self.primes),
            "m": self.m,
            "transcript": list(self.transcript),
        }


def _check_sophie_germain(p: int, q: int) -> None:
    if p != 2 * q + 1:
        raise InvalidSophieGermain(f"p = {p} is not 2q + 1 for q = {q}")
    if q % 2 == 0 or not (arith.is_prime(q) and arith.is_prime(p)):
        raise InvalidSophieGermain(f"q = {q} and p = {p} must both be odd primes")


def smallest_nonresidue(r: int) -> int:
    n = 2
    while arith.jacobi(n, r) != -1:
        n += 1
    return n


def tuple_problems(cert: TupleCertificate) -> list[str]:
    """Re-verify every congruence and Jacobi condition; empty when valid."""
    base = 8 * cert.p * cert.q
    rs = cert.primes
    problems = []
    if len(rs) != cert.t or len(set(rs)) != len(rs):
        problems.append("wrong number of distinct primes")
    for r in rs:
        if not arith.is_prime(r):
            problems.append(f"{r} is not prime")
        if r % base != 1:
            problems.append(f"{r} is not 1 mod {base}")
    for ri, rj in itertools.permutations(rs, 2):
        if arith.jacobi(ri, rj) != -1:
            problems.append(f"({ri}/{rj}) != -1")
    return problems


def crt_prime_tuple(t: int, p: int, q: int, search_bound: int | None = None) -> TupleCertificate:
    """Primes r_i = 1 (mod 8pq) with (r_i / r_j) = -1 for all i != j."""
    _check_sophie_germain(p, q)
    if t < 2:
        raise DomainError(f"t must be at least 2, got {t}")
    base = 8 * p * q
    r1 = arith.next_prime_in_ap(1, base, 1, search_bound)
    rs = [r1]
    transcript = [{"system": [[1, base]], "x0": 1, "modulus": base, "prime": r1}]
    while len(rs) < t:
        system = [(1, base)] + [(smallest_nonresidue(r), r) for r in rs]
        x0, modulus = arith.crt(system)
        r = arith.next_prime_in_ap(x0, modulus, 1, search_bound)
        rs.append(r)
        transcript.append(
            {"system": [list(c) for c in system], "x0": x0, "modulus": modulus, "prime": r}
        )
    cert = TupleCertificate(t, p, q, tuple(rs), tuple(transcript))
    problems = tuple_problems(cert)
    if problems:
        raise AssertionError("; ".join(problems))
    return cert


def check_h1_structure(m: int, p: int, primes: tuple[int, ...] = ()) -> bool:
    """Is H^1[2] of K_{m,p} exactly <[2], [m], [p]> inside Q*/(Q*)^2?"""
    hint = tuple(primes) + (p,)
    h1 = biquad.h1_subgroup(m, p, hint)
    target = subgroup_members(
        [SquareClass.of(2), arith.squarefree_kernel(m, hint), SquareClass.of(p)]
    )
    return h1 == target


@dataclass(frozen=True)
class BiquadTheoremReport:
    t: int
    q: int
    p: int
    m: int
    primes: tuple[int, ...]
    rank_Kmp: int
    rank_Kmp_minus_1: int
    h1_structure_ok: bool
    m_unit_norm_minus_one: bool

    @property
    def expected(self) -> int:
        return self.t - 1

    @property
    def passed(self) -> bool:
        return (
            self.rank_Kmp == self.expected
            and self.rank_Kmp_minus_1 == self.expected
            and self.h1_structure_ok
        )

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "q": self.q,
            "p": self.p,
            "r": list(self.primes),
            "m": self.m,
            "rank_Kmp": self.rank_Kmp,
            "rank_Kmp_minus_1": self.rank_Kmp_minus_1,
            "expected": self.expected,
            "h1_structure_ok": self.h1_structure_ok,
            "m_unit_norm_minus_one": self.m_unit_norm_minus_one,
            "passed": self.passed,
        }


def verify_theorem_biquad(t: int, q: int, search_bound: int | None = None) -> BiquadTheoremReport:
    """Build m = r_1...r_t and compute Po(K_{m,p}) and Po(K_{m,2q}) with p = 2q + 1."""
    if t < 3 or t % 2 == 0:
        raise DomainError(f"t must be odd and at least 3, got {t}")
    p = 2 * q + 1
    cert = crt_prime_tuple(t, p, q, search_bound)
    m, rs = cert.m, cert.primes
    hint = rs + (2, q, p)
    rank_p = biquad.polya_rank_biquad(m, p, hint)
    rank_2q = biquad.polya_rank_biquad(m, 2 * q, hint)
    norm_minus_one = quadfield.a_class(m, "auto", rs).is_identity
    return BiquadTheoremReport(
        t=t,
        q=q,
        p=p,
        m=m,
        primes=rs,
        rank_Kmp=rank_p,
        rank_Kmp_minus_1=rank_2q,
        h1_structure_ok=check_h1_structure(m, p, rs),
        m_unit_norm_minus_one=norm_minus_one,
    )


def verify_theorem_cubic(M: float, search_bound: int | None = None) -> cubic.CubicCertificate:
    cert = cubic.find_large_polya_cubic(M, search_bound)
    problems = cubic.check_certificate(cert)
    if problems:
        raise AssertionError("; ".join(problems))
    return cert
