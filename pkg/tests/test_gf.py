import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_codes.errors import DivisionByZero, FieldMismatch, NonPrimeCharacteristic, ReducibleModulus
from twisted_codes.gf import FieldElem, FiniteField, field_create, ff_arith, frobenius_apply, smallest_irreducible

FIELDS = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (2, 4)]


def naive_mul(a, b, p, modulus):
    """Schoolbook product of base-p digit vectors reduced by a monic modulus (low degree first)."""
    m = len(modulus) - 1
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    prod = [0] * (2 * m)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(2 * m - 1, m - 1, -1):
        c = prod[d]
        if c:
            for i, mc in enumerate(modulus):
                prod[d - m + i] = (prod[d - m + i] - c * mc) % p
    return sum(prod[i] * p**i for i in range(m))


def test_f4_examples():
    F = field_create(2, 2, [1, 1, 1])
    assert F.q == 4
    assert F.mul(2, 2) == 3
    assert all(F.mul(a, 1) == a for a in range(4))
    assert F.div(1, 3) == 2
    assert F.frob(2, 1) == 3
    assert all(F.frob(a, 0) == a for a in range(4))
    assert all(F.frob(1, k) == 1 for k in range(4))


def test_prime_field_and_errors():
    F = field_create(3, 1)
    assert F.q == 3 and F.m == 1
    with pytest.raises(ReducibleModulus):
        field_create(2, 2, [1, 0, 1])
    with pytest.raises(NonPrimeCharacteristic):
        field_create(4, 1)
    with pytest.raises(DivisionByZero):
        F.div(1, 0)


def test_default_modulus_is_smallest_irreducible():
    assert smallest_irreducible(2, 2) == [1, 1, 1]
    assert smallest_irreducible(3, 2) == [1, 0, 1]


@pytest.mark.parametrize("p,m", FIELDS)
def test_tables_match_schoolbook_product(p, m):
    F = FiniteField(p, m)
    mod = F.modulus
    for a in range(F.q):
        for b in range(F.q):
            assert F.mul(a, b) == naive_mul(a, b, p, mod)


@pytest.mark.parametrize("p,m", FIELDS)
def test_lagrange_and_frobenius_order(p, m):
    F = FiniteField(p, m)
    for a in range(1, F.q):
        assert F.pow(a, F.q - 1) == 1
        assert F.mul(a, F.inv(a)) == 1
    assert all(F.frob(a, m) == a for a in range(F.q))


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pm, data):
    F = FiniteField(*pm)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a


@given(st.sampled_from(FIELDS), st.data())
def test_frobenius_is_automorphism(pm, data):
    F = FiniteField(*pm)
    a, b = data.draw(st.integers(0, F.q - 1)), data.draw(st.integers(0, F.q - 1))
    k = data.draw(st.integers(0, 2 * F.m))
    assert F.frob(F.mul(a, b), k) == F.mul(F.frob(a, k), F.frob(b, k))
    assert F.frob(F.add(a, b), k) == F.add(F.frob(a, k), F.frob(b, k))


def test_vectorized_ops_agree():
    F = FiniteField(3, 2)
    a = np.arange(9)
    b = a[::-1].copy()
    assert F.vmul(a, b).tolist() == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vadd(a, b).tolist() == [F.add(int(x), int(y)) for x, y in zip(a, b)]


def test_field_elem_wrapper():
    F = FiniteField(2, 2)
    x = FieldElem(F, 2)
    assert (x * x).code == 3
    assert ff_arith("div", FieldElem(F, 1), FieldElem(F, 3)).code == 2
    assert frobenius_apply(x, 1).code == 3
    with pytest.raises(FieldMismatch):
        x + FieldElem(FiniteField(3, 1), 1)
