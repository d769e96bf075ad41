"""Ground-truth Polya groups of real quadratic fields from binary quadratic forms.

The narrow class group of discriminant D > 0 is realised as the set of
reduction cycles of primitive indefinite forms, with Dirichlet composition.
The wide class group is its quotient by the class of (-1, b0, (D - b0^2)/4),
and Po(Q(sqrt d)) is the subgroup generated by the ramified prime ideals.

Nothing here touches units or square classes, so it checks
:mod:`polya.quadfield` from the outside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import factor, is_squarefree
from .errors import DomainError

Form = tuple[int, int, int]


@dataclass(frozen=True)
class QuadraticForm:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        D = self.discriminant
        r = math.isqrt(D) if D > 0 else 0
        if D <= 0 or r * r == D:
            raise DomainError(f"form {self.astuple()} is not indefinite and irrational")
        if math.gcd(self.a, self.b, self.c) != 1:
            raise DomainError(f"form {self.astuple()} is not primitive")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def astuple(self) -> Form:
        return (self.a, self.b, self.c)

    def inverse(self) -> "QuadraticForm":
        return QuadraticForm(self.a, -self.b, self.c)


def _is_reduced(f: Form, D: int) -> bool:
    a, b, _ = f
    if b <= 0 or b * b >= D:
        return False
    lo = 2 * abs(a) + b
    hi = 2 * abs(a) - b
    return lo * lo > D and (hi < 0 or hi * hi < D)


def _rho(f: Form, D: int) -> Form:
    """One reduction step, (a, b, c) -> (c, b', *), properly equivalent."""
    _, b, c = f
    m = 2 * abs(c)
    s = math.isqrt(D)
    if c * c < D:
        # largest b' = -b (mod 2|c|) with b' < sqrt(D)
        b2 = s - (s + b) % m
    else:
        b2 = (-b) % m
        if b2 > abs(c):
            b2 -= m
    return (c, b2, (b2 * b2 - D) // (4 * c))


def _to_reduced(f: Form, D: int) -> Form:
    while not _is_reduced(f, D):
        f = _rho(f, D)
    return f


def _cycle(f: Form, D: int) -> list[Form]:
    out = [f]
    g = _rho(f, D)
    while g != f:
        out.append(g)
        g = _rho(g, D)
    return out


def reduce_cycle(f: QuadraticForm) -> QuadraticForm:
    """Lexicographically smallest reduced form properly equivalent to ``f``."""
    D = f.discriminant
    return QuadraticForm(*min(_cycle(_to_reduced(f.astuple(), D), D)))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _compose(f: Form, g: Form, D: int) -> Form:
    a1, b1, _ = f
    a2, b2, _ = g
    h = (b1 + b2) // 2
    e1, u1, v1 = _xgcd(a1, a2)
    e, w, nu = _xgcd(e1, h)
    lam, mu = w * u1, w * v1
    B = (lam * a1 * b2 + mu * a2 * b1 + nu * (b1 * b2 + D) // 2) // e
    a3 = a1 * a2 // (e * e)
    B %= 2 * abs(a3)
    return (a3, B, (B * B - D) // (4 * a3))


def compose(f: QuadraticForm, g: QuadraticForm) -> QuadraticForm:
    """Dirichlet composition; the result lies in the product class."""
    D = f.discriminant
    if g.discriminant != D:
        raise DomainError(f"discriminants differ: {D} vs {g.discriminant}")
    return QuadraticForm(*_compose(f.astuple(), g.astuple(), D))


def is_fundamental(D: int) -> bool:
    if D <= 1 or math.isqrt(D) ** 2 == D:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        return (D // 4) % 4 in (2, 3) and is_squarefree(D // 4)
    return False


@dataclass
class NarrowClassGroup:
    """Narrow class group of a positive fundamental discriminant.

    Classes are labelled by the smallest reduced form of their cycle.
    """

    D: int
    classes: list[Form]
    _label: dict[Form, Form] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.classes)

    @property
    def identity(self) -> Form:
        b0 = self.D % 2
        return self.label((1, b0, (b0 - self.D) // 4))

    def label(self, f: Form) -> Form:
        return self._label[_to_reduced(f, self.D)]

    def mul(self, x: Form, y: Form) -> Form:
        return self.label(_compose(x, y, self.D))

    def inverse(self, x: Form) -> Form:
        return self.label((x[0], -x[1], x[2]))


def narrow_class_group(D: int) -> NarrowClassGroup:
    if not is_fundamental(D):
        raise DomainError(f"{D} is not a positive fundamental discriminant")
    s = math.isqrt(D)
    reduced = []
    for b in range(1 + (D + 1) % 2, s + 1, 2):
        n = (D - b * b) // 4
        for a in _divisors(n):
            for sa in (a, -a):
                f = (sa, b, -n // sa)
                if math.gcd(*f) == 1 and _is_reduced(f, D):
                    reduced.append(f)
    label: dict[Form, Form] = {}
    classes = []
    for f in reduced:
        if f in label:
            continue
        cyc = _cycle(f, D)
        rep = min(cyc)
        classes.append(rep)
        for g in cyc:
            label[g] = rep
    return NarrowClassGroup(D, sorted(classes), label)


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def _ramified_form(D: int, q: int) -> Form:
    if D % q:
        raise DomainError(f"{q} does not divide {D}")
    b = D % 2
    while (b * b - D) % (4 * q):
        b += 2
    return (q, b, (b * b - D) // (4 * q))


def ramified_prime_class(D: int, q: int, group: NarrowClassGroup | None = None) -> Form:
    """Narrow class of the prime ideal above a ramified prime ``q``."""
    group = group or narrow_class_group(D)
    return group.label(_ramified_form(D, q))


def wide_quotient_kernel(D: int, group: NarrowClassGroup | None = None) -> Form:
    """Class of (-1, b0, (D - b0^2)/4); trivial iff the fundamental unit has norm -1."""
    group = group or narrow_class_group(D)
    b0 = D % 2
    return group.label((-1, b0, (D - b0 * b0) // 4))


def _fundamental_discriminant(d: int) -> int:
    if d <= 1 or not is_squarefree(d):
        raise DomainError(f"radicand must be square-free and > 1, got {d}")
    return d if d % 4 == 1 else 4 * d


def polya_subgroup(d: int) -> tuple[NarrowClassGroup, set[frozenset[Form]]]:
    """Po(Q(sqrt d)) as a set of wide classes (each a coset of the narrow kernel)."""
    D = _fundamental_discriminant(d)
    G = narrow_class_group(D)
    kappa = wide_quotient_kernel(D, G)

    def wide(x: Form) -> frozenset[Form]:
        return frozenset((x, G.mul(x, kappa)))

    members = {wide(G.identity)}
    for q, _ in factor(D).factors:
        g = ramified_prime_class(D, q, G)
        if wide(G.mul(g, g)) != wide(G.identity):
            raise AssertionError(f"ramified class of {q} has order > 2 in Cl")
        members |= {wide(G.mul(g, next(iter(h)))) for h in members}
    return G, members


def polya_group_oracle(d: int) -> int:
    """Rank of Po(Q(sqrt d)), read off from the form class group."""
    _, members = polya_subgroup(d)
    size = len(members)
    rank = size.bit_length() - 1
    if 1 << rank != size:
        raise AssertionError(f"Polya group of Q(sqrt({d})) has order {size}")
    return rank
