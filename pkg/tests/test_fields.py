import random

import pytest
from hypothesis import given, strategies as st

from kcorr.exactalg import QQ, PrimeField
from kcorr.errors import InvalidField

FIELDS = [QQ, PrimeField(5), PrimeField(2), PrimeField(7)]


def scalars(field):
    if field is QQ:
        return st.fractions(max_numerator=50, max_denominator=20)
    return st.integers(min_value=0, max_value=field.p - 1)


@pytest.mark.parametrize("field", FIELDS)
def test_field_axioms_randomized(field):
    rng = random.Random(20240817)
    pool = field.elements_sample()
    for _ in range(300):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert field.add(a, field.add(b, c)) == field.add(field.add(a, b), c)
        assert field.mul(a, field.mul(b, c)) == field.mul(field.mul(a, b), c)
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b),
                                                          field.mul(a, c))
        assert field.add(a, field.neg(a)) == field.zero
        if a:
            assert field.mul(a, field.inv(a)) == field.one


@given(a=st.integers(), b=st.integers())
def test_prime_field_ring_map(a, b):
    f5 = PrimeField(5)
    assert f5.add(f5.from_int(a), f5.from_int(b)) == f5.from_int(a + b)
    assert f5.mul(f5.from_int(a), f5.from_int(b)) == f5.from_int(a * b)


def test_non_prime_modulus_rejected():
    with pytest.raises(InvalidField):
        PrimeField(6)
    with pytest.raises(InvalidField):
        PrimeField(1)


def test_prime_field_instances_cached():
    assert PrimeField(5) is PrimeField(5)
    assert PrimeField(5) != PrimeField(7)


def test_rational_literals():
    assert QQ.from_fraction(3, 2) * 2 == 3
    f5 = PrimeField(5)
    assert f5.from_fraction(3, 2) == f5.mul(3, f5.inv(2))
