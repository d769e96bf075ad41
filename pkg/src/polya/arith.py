"""Integer arithmetic: primality, symbols, CRT, square roots, factoring."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import settings
from .errors import (
    DomainError,
    EffortExceeded,
    NonResidue,
    NotInvertible,
    SearchExhausted,
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 10_000


def _small_prime_table(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_PRIMES = _small_prime_table(_TRIAL_LIMIT)


def _miller_rabin(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int | None = None) -> bool:
    """Miller-Rabin; deterministic below 2**64, ``rounds`` random bases above.

    The random bases are drawn from a generator seeded with ``n`` so repeated
    calls always agree.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 2**64:
        return all(_miller_rabin(n, b) for b in _SMALL_PRIMES)
    rounds = settings.mr_rounds if rounds is None else rounds
    if not all(_miller_rabin(n, b) for b in _SMALL_PRIMES):
        return False
    rng = random.Random(n)
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(rounds))


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def crt(congruences: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli.

    Returns ``(x, M)`` with ``0 <= x < M = prod(m_i)``.
    """
    x, modulus = 0, 1
    for residue, m in congruences:
        if m < 1:
            raise DomainError(f"modulus must be positive, got {m}")
        if math.gcd(modulus, m) != 1:
            raise DomainError(f"moduli not coprime: {modulus} and {m}")
        # x + modulus * k = residue (mod m)
        k = (residue - x) * pow(modulus, -1, m) % m if m > 1 else 0
        x += modulus * k
        modulus *= m
        x %= modulus
    return x, modulus


def inv_mod(a: int, m: int) -> int:
    if m < 2:
        raise DomainError(f"modulus must be at least 2, got {m}")
    if math.gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def sqrt_mod_prime(a: int, p: int) -> int:
    """Tonelli-Shanks. Returns the smaller of the two roots."""
    if p < 3 or p % 2 == 0:
        raise DomainError(f"expected an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        raise NonResidue(f"{a} is not a square modulo {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while jacobi(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    if r * r % p != a:
        raise NonResidue(f"{a} is not a square modulo {p}")
    return min(r, p - r)


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def _pollard_brent(n: int, budget: int) -> tuple[int, int]:
    """Return a nontrivial factor of composite odd ``n`` and iterations used."""
    rng = random.Random(n)
    used = 0
    while used < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
    raise EffortExceeded(f"Pollard rho gave up on {n} after {used} iterations")


def factor(n: int, hint: Sequence[int] = ()) -> Factorization:
    """Prime factorization by trial division, then Pollard-Brent rho.

    ``hint`` lists primes known to divide ``n``; they are divided out first,
    which lets callers that built ``n`` from large primes skip the search.
    """
    if n < 1:
        raise DomainError(f"factor needs n >= 1, got {n}")
    counts: dict[int, int] = {}
    rest = n
    for p in hint:
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
    for p in _TRIAL_PRIMES:
        if p * p > rest:
            break
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
    budget = settings.rho_iterations
    stack = [rest] if rest > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        d, used = _pollard_brent(m, budget)
        budget -= used
        stack += [d, m // d]
    for p in counts:
        if not is_prime(p):
            raise AssertionError(f"hint {p} is not prime")
    return Factorization(n, tuple(sorted(counts.items())))


def is_squarefree(n: int, hint: Sequence[int] = ()) -> bool:
    if n < 1:
        raise DomainError(f"is_squarefree needs n >= 1, got {n}")
    return all(e == 1 for _, e in factor(n, hint).factors)


def squarefree_kernel(n: int, hint: Sequence[int] = ()):
    """Image of ``n`` in Q*/(Q*)^2 as a :class:`~polya.sqclass.SquareClass`."""
    from .sqclass import SquareClass

    if n == 0:
        raise DomainError("0 has no square class")
    f = factor(abs(n), hint)
    return SquareClass(1 if n > 0 else -1, tuple(p for p, e in f.factors if e % 2))


def next_prime_in_ap(a: int, m: int, start: int, bound: int | None = None) -> int:
    """Smallest prime ``p > start`` with ``p = a (mod m)``.

    ``bound`` caps the number of progression terms examined.
    """
    if m < 1 or math.gcd(a, m) != 1:
        raise DomainError(f"progression {a} mod {m} contains at most one prime")
    bound = settings.search_bound if bound is None else bound
    x = start + 1 + (a - start - 1) % m
    for _ in range(bound):
        if is_prime(x):
            return x
        x += m
    raise SearchExhausted(f"no prime = {a} mod {m} within {bound} terms above {start}")


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factor(n).factors:
        result -= result // p
    return result


def primes_up_to(limit: int):
    """Numpy array of all primes <= ``limit``."""
    import numpy as np

    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if sieve[i]:
            sieve[i * i :: 2 * i] = False
    return np.flatnonzero(sieve)


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """Local Hilbert symbol (a, b)_p for nonzero integers and a prime ``p``."""
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol of zero")
    alpha, u = _split_power(a, p)
    beta, v = _split_power(b, p)
    if p == 2:
        def eps(x: int) -> int:
            return ((x - 1) // 2) % 2

        def omega(x: int) -> int:
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= jacobi(u, p)
    if alpha % 2:
        sign *= jacobi(v, p)
    return sign


def _split_power(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n
