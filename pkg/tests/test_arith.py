from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from commuting_powers.core.arith import cofactors, coprime, ext_gcd, factorize, is_prime, multi_bezout
from commuting_powers.core.errors import BothZero
from commuting_powers.core.models import BezoutCertificate, PrimeFactorization


def test_factorize_examples():
    assert factorize(12).factors == [(2, 2), (3, 1)]
    assert factorize(1).factors == []
    assert factorize(360).factors == [(2, 3), (3, 2), (5, 1)]
    assert factorize(97).factors == [(97, 1)]


def test_factorize_multiplies_back():
    for r in range(1, 10_001):
        fact = factorize(r)
        assert math.prod(p**a for p, a in fact.factors) == r
        assert all(is_prime(p) for p in fact.primes)


def test_factorization_model_rejects_wrong_product():
    with pytest.raises(ValueError):
        PrimeFactorization(value=12, factors=[(2, 1), (3, 1)])
    with pytest.raises(ValueError):
        PrimeFactorization(value=12, factors=[(3, 1), (2, 2)])


def test_ext_gcd_examples():
    assert ext_gcd(3, 4) == (1, -1, 1)
    assert ext_gcd(7, 1) == (1, 0, 1)
    g, u, v = ext_gcd(6, 10)
    assert g == 2 and 6 * u + 10 * v == 2


def test_ext_gcd_both_zero():
    with pytest.raises(BothZero):
        ext_gcd(0, 0)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_ext_gcd_certificate(a, b):
    if a == 0 and b == 0:
        return
    g, u, v = ext_gcd(a, b)
    assert g == math.gcd(a, b)
    assert u * a + v * b == g


def test_multi_bezout_examples():
    cert = multi_bezout([3, 4])
    assert cert.gcd == 1 and cert.coefficients == [-1, 1]
    cert = multi_bezout([6, 10, 15])
    assert cert.gcd == 1
    assert sum(c * q for c, q in zip(cert.coefficients, [6, 10, 15])) == 1
    assert multi_bezout([5]).coefficients == [1]
    assert multi_bezout([5]).gcd == 5


def test_multi_bezout_on_cofactors():
    for r in range(2, 5041):
        fact = factorize(r)
        qs = cofactors(fact)
        cert = multi_bezout(qs)
        assert sum(c * q for c, q in zip(cert.coefficients, qs)) == cert.gcd
        if len(qs) >= 2:
            assert cert.gcd == 1


def test_bezout_model_checks_identity():
    with pytest.raises(ValueError):
        BezoutCertificate(inputs=[3, 4], gcd=1, coefficients=[1, 1])


def test_coprime():
    assert coprime(2, 3)
    assert coprime(1, 9)
    assert not coprime(6, 10)
