import pytest
from hypothesis import given, strategies as st

from walshcode.cyclo import CycInt


def test_p2_degenerates_to_integers():
    a = CycInt.integer(2, -1)
    assert (a * a).as_int() == 1
    assert CycInt.root(2, 1).as_int() == -1
    assert CycInt.root(2, 0).as_int() == 1


def test_cyclotomic_relation_p3():
    z1 = CycInt.root(3, 1)
    z2 = CycInt.root(3, 2)
    assert z1 + z2 == CycInt.integer(3, -1)


def test_norm2_of_one_plus_zeta_p3():
    a = CycInt.one(3) + CycInt.root(3, 1)
    assert a.norm2().as_int() == 1


def test_from_counts_canonical():
    # 1 + z + z^2 + z^3 + z^4 = 0 for p = 5
    assert CycInt.from_counts(5, [1, 1, 1, 1, 1]).is_zero()


def test_norm2_may_be_irrational_for_p5():
    a = CycInt.one(5) + CycInt.root(5, 1)
    m2 = a.norm2()
    assert not m2.is_rational()
    with pytest.raises(ValueError):
        m2.as_int()


def test_mismatched_p_rejected():
    with pytest.raises(ValueError):
        CycInt.one(3) + CycInt.one(5)


def _cyc(p):
    return st.tuples(*([st.integers(-9, 9)] * (p - 1))).map(
        lambda t: CycInt(p, t))


@given(_cyc(5), _cyc(5), _cyc(5))
def test_ring_axioms_p5(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(_cyc(7), _cyc(7))
def test_conj_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a


@given(st.integers(0, 12), st.integers(0, 12))
def test_roots_multiply_by_exponent_addition(i, j):
    p = 7
    assert CycInt.root(p, i) * CycInt.root(p, j) == CycInt.root(p, i + j)


def test_root_norm_is_one():
    for p in (2, 3, 5, 7):
        for k in range(p):
            assert CycInt.root(p, k).norm2() == CycInt.one(p)
