"""Square-free values of h(X) = X^2 + 3X + 9 at primes in a progression.

The expected proportion of primes p = a (mod m) with h(p) square-free is the
Euler product c_h(m, a) = prod_q (1 - rho(q^2) phi(gcd(m, q^2)) / phi(q^2)).
Empirical counts come from a sieve: q^2 | h(n) iff n hits one of the roots of
h modulo q^2, so marking those residues up to X is exact.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import arith
from .cubic import h_value
from .errors import DomainError, EffortExceeded

ENUMERATION_LIMIT = 10**6


def _h_roots_mod_prime_square(q: int) -> list[int]:
    """All roots of h modulo q^2, units or not."""
    if q in (2, 3):
        return [b for b in range(q * q) if h_value(b) % (q * q) == 0]
    if q % 3 != 1:
        return []
    # disc(h) = -27, so the roots are (-3 +- 3*sqrt(-3)) / 2
    r = 3 * arith.sqrt_mod_prime(-3, q)
    q2 = q * q
    roots = []
    half = (q + 1) // 2
    for x in {(-3 + r) * half % q, (-3 - r) * half % q}:
        # one Newton step lifts a simple root from q to q^2
        x = (x - h_value(x) * pow(2 * x + 3, -1, q2)) % q2
        roots.append(x)
    return sorted(roots)


def _check_progression(a: int, m: int) -> None:
    if m < 1 or math.gcd(a, m) != 1:
        raise DomainError(f"need gcd(a, m) = 1, got a={a}, m={m}")
    if not arith.is_squarefree(m):
        raise DomainError(f"modulus {m} must be square-free")


def rho(n: int, a: int = 1, m: int = 1) -> int:
    """#{b in (Z/n)* : h(b) = 0 (mod n), b = a (mod gcd(m, n))}."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if math.gcd(a, m) != 1:
        raise DomainError(f"need gcd(a, m) = 1, got a={a}, m={m}")
    g = math.gcd(m, n)
    if n <= ENUMERATION_LIMIT:
        return sum(
            1
            for b in range(n)
            if h_value(b) % n == 0 and math.gcd(b, n) == 1 and (b - a) % g == 0
        )
    q = math.isqrt(n)
    if q * q == n and arith.is_prime(q):
        return sum(
            1
            for b in _h_roots_mod_prime_square(q)
            if b % q and (b - a) % g == 0
        )
    raise EffortExceeded(f"rho({n}) needs enumeration beyond {ENUMERATION_LIMIT}")


def euler_factor(q: int, m: int = 1, a: int = 1) -> float:
    """Local factor of c_h(m, a) at the prime q."""
    q2 = q * q
    g = math.gcd(m, q2)
    return 1 - rho(q2, a, m) * (1 if g == 1 else g - g // q) / (q2 - q)


def euler_product_c(m: int = 1, a: int = 1, cutoff: int = 10_000) -> float:
    """c_h(m, a) truncated to primes q <= cutoff (primes of m always included)."""
    _check_progression(a, m)
    if cutoff < 100:
        raise DomainError("cutoff must be at least 100")
    qs = set(int(q) for q in arith.primes_up_to(cutoff)) | set(arith.factor(m).primes)
    return math.exp(math.fsum(math.log(euler_factor(q, m, a)) for q in sorted(qs)))


def euler_tail_bound(cutoff: int) -> float:
    """Lower bound for the omitted factors: rho(q^2) <= 2 gives prod >= 1 - 2/cutoff."""
    return 1 - 2 / cutoff


def _squarefree_mask(X: int) -> np.ndarray:
    """mask[n] is True iff h(n) is square-free, for 0 <= n <= X."""
    bad = np.zeros(X + 1, dtype=bool)
    for q in arith.primes_up_to(math.isqrt(h_value(X)) + 1):
        q = int(q)
        q2 = q * q
        for r in _h_roots_mod_prime_square(q):
            if r <= X:
                bad[r::q2] = True
    return ~bad


def _primes_in_progression(X: int, a: int, m: int) -> np.ndarray:
    ps = arith.primes_up_to(X)
    return ps[ps % m == a % m]


def empirical_count(X: int, a: int = 1, m: int = 1) -> tuple[int, int]:
    """(N_h(X; a, m), pi(X; m, a))."""
    _check_progression(a, m)
    ps = _primes_in_progression(X, a, m)
    mask = _squarefree_mask(X)
    return int(mask[ps].sum()), int(ps.size)


def ratio_curve(X: int, a: int = 1, m: int = 1, points: int = 50) -> tuple[np.ndarray, np.ndarray]:
    """Running N_h / pi at ``points`` log-spaced bounds up to X."""
    _check_progression(a, m)
    ps = _primes_in_progression(X, a, m)
    good = np.cumsum(_squarefree_mask(X)[ps])
    xs = np.unique(np.geomspace(max(100, int(ps[0]) if ps.size else 100), X, points).astype(np.int64))
    idx = np.searchsorted(ps, xs, side="right")
    keep = idx > 0
    xs, idx = xs[keep], idx[keep]
    return xs, good[idx - 1] / idx


@dataclass(frozen=True)
class DensityReport:
    X: int
    a: int
    m: int
    cutoff: int
    empirical: int
    primes_in_ap: int
    euler_c: float
    tail_bound: float
    main_term: float
    ratio: float

    @property
    def deviation(self) -> float:
        return abs(self.ratio - self.euler_c)

    def to_json(self) -> dict:
        out = asdict(self)
        out["deviation"] = self.deviation
        return out


def density_report(X: int, a: int = 1, m: int = 1, cutoff: int = 10_000) -> DensityReport:
    if X < 100:
        raise DomainError("X must be at least 100")
    n_h, pi = empirical_count(X, a, m)
    c = euler_product_c(m, a, cutoff)
    main = c / arith.euler_phi(m) * X / math.log(X)
    return DensityReport(
        X=X,
        a=a,
        m=m,
        cutoff=cutoff,
        empirical=n_h,
        primes_in_ap=pi,
        euler_c=c,
        tail_bound=euler_tail_bound(cutoff),
        main_term=main,
        ratio=n_h / pi if pi else float("nan"),
    )
