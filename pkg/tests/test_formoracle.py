import pytest
from hypothesis import given, strategies as st

from polya import arith, formoracle as fo, quadfield as qf
from polya.errors import DomainError

F = fo.QuadraticForm


def test_form_validation():
    with pytest.raises(DomainError):
        F(1, 0, -4)  # square discriminant
    with pytest.raises(DomainError):
        F(2, 4, -2)  # not primitive
    assert F(1, 6, -1).discriminant == 40
    assert F(2, 3, -1).inverse() == F(2, -3, -1)


def test_reduce_cycle_idempotent():
    f = fo.reduce_cycle(F(1, 6, -1))
    assert fo.reduce_cycle(f) == f
    g = fo.reduce_cycle(F(2, 6, -1))
    assert g != f


def test_compose_laws():
    G = fo.narrow_class_group(40)
    e = fo.reduce_cycle(F(1, 6, -1))
    n = fo.reduce_cycle(F(2, 4, -3))
    assert fo.reduce_cycle(fo.compose(e, n)) == n
    assert fo.reduce_cycle(fo.compose(n, n.inverse())) == e
    assert fo.reduce_cycle(fo.compose(n, n)) == e
    assert G.order == 2
    with pytest.raises(DomainError):
        fo.compose(F(1, 6, -1), F(1, 1, -1))


@pytest.mark.parametrize("D, h", [(5, 1), (8, 1), (12, 2), (13, 1), (40, 2), (60, 4), (136, 4), (229, 3), (316, 6)])
def test_narrow_class_numbers(D, h):
    assert fo.narrow_class_group(D).order == h


def test_ramified_classes():
    G40 = fo.narrow_class_group(40)
    assert fo.ramified_prime_class(40, 2, G40) != G40.identity
    G136 = fo.narrow_class_group(136)
    assert fo.ramified_prime_class(136, 2, G136) == G136.identity
    G12 = fo.narrow_class_group(12)
    assert fo.ramified_prime_class(12, 3, G12) == G12.label((3, 0, -1))


def test_wide_kernel():
    for D, principal in [(5, True), (12, False), (40, True)]:
        G = fo.narrow_class_group(D)
        assert (fo.wide_quotient_kernel(D, G) == G.identity) is principal


def test_oracle_examples():
    assert [fo.polya_group_oracle(d) for d in (5, 10, 34)] == [0, 1, 0]


@given(st.sampled_from([D for D in range(5, 800) if fo.is_fundamental(D) and D > 4]))
def test_group_axioms(D):
    G = fo.narrow_class_group(D)
    for x in G.classes:
        assert G.mul(x, G.identity) == x
        assert G.mul(x, G.inverse(x)) == G.identity
        for y in G.classes:
            assert G.mul(x, y) == G.mul(y, x)


@given(st.sampled_from([d for d in range(2, 1000) if arith.is_squarefree(d)]))
def test_kernel_trivial_iff_norm_minus_one(d):
    G, _ = fo.polya_subgroup(d)
    trivial = fo.wide_quotient_kernel(G.D, G) == G.identity
    assert trivial == (qf.fundamental_unit(d).norm == -1)
