import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfr.fields import GF, QQ, FieldDesc, random_distinct_primes, random_prime


def test_prime_window_enforced():
    with pytest.raises(ValueError):
        GF(32003)           # below 2^15
    with pytest.raises(ValueError):
        GF(2 ** 31 + 11)
    GF(32771)               # smallest prime above 2^15


def test_nonprime_rejected():
    with pytest.raises(ValueError):
        GF(32769)


def test_random_primes_distinct_and_in_window():
    rng = random.Random(0)
    ps = random_distinct_primes(rng, 2)
    assert len(set(ps)) == 2
    for p in ps:
        assert (1 << 15) <= p < (1 << 31)
        GF(p)


def test_random_prime_reproducible():
    assert random_prime(random.Random(5)) == random_prime(random.Random(5))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
@settings(max_examples=50, deadline=None)
def test_field_ring_axioms(a, b):
    for fld in (GF(32771), QQ):
        x, y = fld.of_int(a), fld.of_int(b)
        assert fld.add(x, y) == fld.add(y, x)
        assert fld.mul(x, y) == fld.mul(y, x)
        assert fld.sub(x, y) == fld.add(x, fld.neg(y))
        if not fld.is_zero(y):
            assert fld.mul(fld.div(x, y), y) == x


def test_inverse():
    fld = GF(32771)
    for a in (1, 2, 17, 32770):
        x = fld.of_int(a)
        assert fld.mul(x, fld.inv(x)) == fld.one


def test_random_elements_within_window():
    rng = random.Random(3)
    fld = GF(32771)
    for _ in range(200):
        c = fld.random(rng, 100)
        lifted = int(c) if int(c) <= 100 else int(c) - 32771
        assert -100 <= lifted <= 100


def test_char_zero_field():
    assert QQ.characteristic == 0
    x = QQ.of_int(3)
    assert QQ.div(QQ.one, x) * x == QQ.one
