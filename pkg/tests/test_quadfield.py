import math

import pytest
from hypothesis import given, strategies as st

from polya import arith, quadfield as qf
from polya.errors import DomainError, EffortExceeded, NormMinusOne
from polya.sqclass import IDENTITY, SquareClass

S = SquareClass.of
SQUAREFREE = [d for d in range(2, 201) if arith.is_squarefree(d)]


def test_discriminant_and_ramification():
    assert [qf.discriminant(d) for d in (5, 3, 30)] == [5, 12, 120]
    assert qf.ramified_primes(3) == [2, 3]
    assert qf.ramified_primes(5) == [5]
    assert qf.ramified_primes(30) == [2, 3, 5]
    for bad in (1, 4, 12, -5):
        with pytest.raises(DomainError):
            qf.discriminant(bad)


@pytest.mark.parametrize("d, unit", [(5, (1, 1, -1)), (3, (4, 2, 1)), (7, (16, 6, 1)), (10, (6, 2, -1)), (34, (70, 12, 1))])
def test_fundamental_unit(d, unit):
    u = qf.fundamental_unit(d)
    assert (u.x, u.y, u.norm) == unit


def test_unit_period_bound():
    qf._units.pop(94, None)
    with pytest.raises(EffortExceeded):
        qf.fundamental_unit(94, cf_bound=2)


def brute_unit(d, ymax=1000):
    for y in range(1, ymax + 1):
        for sign in (-1, 1):
            x2 = d * y * y + 4 * sign
            x = math.isqrt(x2) if x2 > 0 else -1
            if x > 0 and x * x == x2:
                return x, y, sign
    return None


@pytest.mark.parametrize("d", SQUAREFREE)
def test_unit_is_minimal(d):
    u = qf.fundamental_unit(d)
    assert u.x * u.x - d * u.y * u.y == 4 * u.norm
    b = brute_unit(d)
    if b is None:
        assert u.y > 1000
    else:
        assert (u.x, u.y, u.norm) == b


def test_norm_u_plus_one():
    assert qf.norm_u_plus_one(qf.fundamental_unit(3)) == 6
    assert qf.norm_u_plus_one(qf.fundamental_unit(7)) == 18
    with pytest.raises(NormMinusOne):
        qf.norm_u_plus_one(qf.fundamental_unit(5))


@pytest.mark.parametrize("method", ["unit", "genus", "auto"])
def test_a_class_examples(method):
    assert qf.a_class(5, method) == IDENTITY
    assert qf.a_class(3, method) == S(2, 3)
    assert qf.a_class(15, method) == S(2, 5)


def test_genus_candidates_contain_unit_value():
    for d in range(2, 1500):
        if not arith.is_squarefree(d):
            continue
        assert qf.a_class(d, "unit") in qf.a_candidates(d)


def test_kernel_over():
    assert qf.kernel_over(72, [2, 17]) == S(2)
    with pytest.raises(AssertionError):
        qf.kernel_over(30, [2, 3])


def test_ranks():
    assert [qf.quad_h1_rank(d) for d in (5, 3, 34)] == [1, 2, 2]
    assert [qf.quad_polya_rank(d) for d in (10, 3, 34)] == [1, 0, 0]


@given(st.sampled_from(SQUAREFREE))
def test_rank_formula(d):
    s = len(qf.ramified_primes(d))
    assert qf.quad_polya_rank(d) == s - qf.quad_h1_rank(d)
    assert qf.quad_h1_rank(d) in (1, 2)
