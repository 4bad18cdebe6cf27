"""Integer helpers: trial-division factorization, gcd certificates, coprimality.

Inputs are bounded by the group-order caps, so plain trial division is enough.
"""
from __future__ import annotations

import math
from typing import List, Sequence, Tuple

from commuting_powers.core.errors import BothZero
from commuting_powers.core.models import BezoutCertificate, PrimeFactorization


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorize(r: int) -> PrimeFactorization:
    if r < 1:
        raise ValueError(f"factorize needs a positive integer, got {r}")
    factors: List[Tuple[int, int]] = []
    rest = r
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            exponent = 0
            while rest % d == 0:
                rest //= d
                exponent += 1
            factors.append((d, exponent))
        d += 1 if d == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return PrimeFactorization(value=r, factors=factors)


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b = g = gcd(a, b) > 0."""
    if a == 0 and b == 0:
        raise BothZero("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def multi_bezout(q: Sequence[int]) -> BezoutCertificate:
    """Fold ext_gcd left to right; coefficients are back-substituted, not minimized."""
    if not q:
        raise ValueError("multi_bezout needs at least one integer")
    g = q[0]
    coefficients = [1]
    for value in q[1:]:
        g, u, v = ext_gcd(g, value)
        coefficients = [c * u for c in coefficients] + [v]
    return BezoutCertificate(inputs=list(q), gcd=g, coefficients=coefficients)


def coprime(m: int, n: int) -> bool:
    return math.gcd(m, n) == 1


def cofactors(factorization: PrimeFactorization) -> List[int]:
    """q_i = r / p_i^a_i for each prime power of r."""
    return [factorization.value // pp for pp in factorization.prime_powers]
