"""Bi-quadratic fields K = Q(sqrt m, sqrt n) and their Polya ranks.

H^1(G, O_K*)[2] is the span of the six classes [D_i], [a_i] of the three
quadratic subfields. When 2 is not totally ramified this is all of H^1, and
the exact sequence 0 -> H^1 -> (Z/2)^s -> Po(K) -> 0 gives the Polya rank.

When an [a_i] is only known up to a genus-theory candidate set, every choice
is tried; the answer is returned only if all choices agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import arith, quadfield
from .errors import DomainError, EffortExceeded, TotallyRamifiedTwo
from .sqclass import SquareClass, mul, subgroup_members, subgroup_rank


@dataclass(frozen=True)
class BiquadField:
    m: int
    n: int
    d1: int
    d2: int
    d3: int
    ramified: tuple[tuple[int, int], ...]
    primes: tuple[int, ...] = ()

    @property
    def s(self) -> int:
        return len(self.ramified)

    @property
    def two_totally_ramified(self) -> bool:
        return (2, 4) in self.ramified


def _kernel(n: int, hint: Sequence[int]) -> int:
    c = arith.squarefree_kernel(n, hint)
    return c.value()


def subfields(m: int, n: int, primes: Sequence[int] = ()) -> tuple[int, int, int]:
    """Square-free radicands of the three quadratic subfields."""
    if m <= 1 or n <= 1:
        raise DomainError("radicands must exceed 1")
    d1, d2, d3 = _kernel(m, primes), _kernel(n, primes), _kernel(m * n, primes)
    if 1 in (d1, d2, d3):
        raise DomainError(f"Q(sqrt {m}, sqrt {n}) is not bi-quadratic")
    return d1, d2, d3


def biquad_field(m: int, n: int, primes: Sequence[int] = ()) -> BiquadField:
    d1, d2, d3 = subfields(m, n, primes)
    odd = set()
    for d in (d1, d2, d3):
        odd |= {p for p, _ in arith.factor(d, primes).factors if p != 2}
    ram = [(p, 2) for p in sorted(odd)]
    # 2 ramifies in 0, 2 or 3 of the subfields; never in exactly one
    twos = sum(d % 4 != 1 for d in (d1, d2, d3))
    if twos == 1:
        raise AssertionError("2 ramifies in exactly one quadratic subfield")
    if twos:
        ram.insert(0, (2, 2 if twos == 2 else 4))
    hint = tuple(sorted(set(primes) | odd))
    return BiquadField(m, n, d1, d2, d3, tuple(ram), hint)


def ramified_primes_biquad(m: int, n: int, primes: Sequence[int] = ()) -> list[tuple[int, int]]:
    return list(biquad_field(m, n, primes).ramified)


def _generators(K: BiquadField) -> tuple[list[SquareClass], list[frozenset[SquareClass]]]:
    """[D_i] for each subfield, plus a candidate set for each [a_i]."""
    fixed, choices = [], []
    for d in (K.d1, K.d2, K.d3):
        hint = [p for p in K.primes if d % p == 0]
        fixed.append(arith.squarefree_kernel(quadfield.discriminant(d, hint), hint))
        cands = quadfield.a_candidates(d, hint)
        choices.append(cands)
    return fixed, choices


def _refine(K: BiquadField, choices: list[frozenset[SquareClass]], i: int) -> list[frozenset[SquareClass]]:
    d = (K.d1, K.d2, K.d3)[i]
    hint = [p for p in K.primes if d % p == 0]
    out = list(choices)
    out[i] = frozenset({quadfield.a_class(d, "unit", hint)})
    return out


def _h1_spans(K: BiquadField) -> set[frozenset[SquareClass]]:
    """Possible H^1[2] subgroups; a single element unless genus theory is ambiguous."""
    if K.two_totally_ramified:
        raise TotallyRamifiedTwo(
            f"2 is totally ramified in Q(sqrt {K.m}, sqrt {K.n}); H^1 may exceed H^1[2]"
        )
    fixed, choices = _generators(K)

    def spans(ch: list[frozenset[SquareClass]]) -> set[frozenset[SquareClass]]:
        return {
            subgroup_members(fixed + list(pick))
            for pick in itertools.product(*[sorted(c) for c in ch])
        }

    result = spans(choices)
    for i in range(3):
        if len(result) == 1:
            break
        if len(choices[i]) > 1:
            choices = _refine(K, choices, i)
            result = spans(choices)
    return result


def h1_generators(m: int, n: int, primes: Sequence[int] = ()) -> list[SquareClass]:
    """The six classes [D_1], [D_2], [D_3], [a_1], [a_2], [a_3], resolved exactly."""
    K = biquad_field(m, n, primes)
    fixed, choices = _generators(K)
    gens = list(fixed)
    for i, c in enumerate(choices):
        if len(c) > 1:
            c = _refine(K, choices, i)[i]
        gens.append(next(iter(c)))
    return gens


def h1_subgroup(m: int, n: int, primes: Sequence[int] = ()) -> frozenset[SquareClass]:
    spans = _h1_spans(biquad_field(m, n, primes))
    if len(spans) != 1:
        raise EffortExceeded(f"H^1 of Q(sqrt {m}, sqrt {n}) undetermined")
    return spans.pop()


def h1_rank_biquad(m: int, n: int, primes: Sequence[int] = ()) -> int:
    members = h1_subgroup(m, n, primes)
    return len(members).bit_length() - 1


def polya_rank_biquad(m: int, n: int, primes: Sequence[int] = ()) -> int:
    """Po(K) = (Z/2)^r with r = s - rank H^1, valid when 2 is not totally ramified."""
    K = biquad_field(m, n, primes)
    return K.s - h1_rank_biquad(m, n, K.primes)


def d3_consistent(m: int, n: int, primes: Sequence[int] = ()) -> bool:
    d1, d2, d3 = subfields(m, n, primes)
    c = [arith.squarefree_kernel(d, primes) for d in (d1, d2, d3)]
    return mul(c[0], c[1]) == c[2] and subgroup_rank(c) == 2
