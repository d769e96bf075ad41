import random

import pytest

from polya import arith, biquad
from polya.errors import DomainError, TotallyRamifiedTwo


def test_subfields():
    assert biquad.subfields(6, 2) == (6, 2, 3)
    assert biquad.subfields(5, 13) == (5, 13, 65)
    with pytest.raises(DomainError):
        biquad.subfields(2, 8)
    with pytest.raises(DomainError):
        biquad.subfields(4, 3)


def test_ramification():
    assert biquad.ramified_primes_biquad(2, 3) == [(2, 4), (3, 2)]
    assert biquad.ramified_primes_biquad(5, 13) == [(5, 2), (13, 2)]
    assert biquad.biquad_field(2, 3).two_totally_ramified


def test_ranks_small():
    assert biquad.h1_rank_biquad(5, 3) == 3
    assert biquad.polya_rank_biquad(5, 3) == 0
    with pytest.raises(TotallyRamifiedTwo):
        biquad.h1_rank_biquad(2, 3)


def test_d3_consistency():
    assert biquad.d3_consistent(6, 10)
    assert biquad.d3_consistent(5, 13)


def test_two_never_ramifies_in_exactly_one_subfield():
    rng = random.Random(2024)
    done = 0
    while done < 500:
        m, n = rng.randrange(2, 5000), rng.randrange(2, 5000)
        try:
            ds = biquad.subfields(m, n)
        except DomainError:
            continue
        assert sum(d % 4 != 1 for d in ds) in (0, 2, 3)
        done += 1
