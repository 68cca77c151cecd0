from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from regprod.arith import (
    crt_lift,
    cyclotomic_sum,
    divisors,
    euler_phi,
    factorize,
    mobius,
    mobius_sieve,
    multiplicative_invariants,
    prime_sieve,
    root_of_unity,
)


@pytest.mark.parametrize("n, expected", [
    (1, (1, 1, 0, {})),
    (12, (0, 4, 2, {2: 2, 3: 1})),
    (30, (-1, 8, 3, {2: 1, 3: 1, 5: 1})),
])
def test_multiplicative_invariants_examples(n, expected):
    inv = multiplicative_invariants(n)
    assert (inv.mobius, inv.phi, inv.omega, inv.factorization) == expected


@pytest.mark.parametrize("bad", [0, -3])
def test_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        multiplicative_invariants(bad)


def test_factorization_keys_sorted_and_reconstruct():
    for n in range(1, 500):
        fac = factorize(n)
        assert list(fac) == sorted(fac)
        prod = 1
        for p, e in fac.items():
            prod *= p**e
        assert prod == n


def test_against_sieve_up_to_1e5():
    limit = 10**5
    mu = mobius_sieve(limit)
    # phi by sieve
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in prime_sieve(limit):
        phi[p::p] -= phi[p::p] // p
    omega = np.zeros(limit + 1, dtype=np.int64)
    for p in prime_sieve(limit):
        omega[p::p] += 1
    for n in range(1, limit + 1, 97):
        inv = multiplicative_invariants(n)
        assert (inv.mobius, inv.phi, inv.omega) == (mu[n], phi[n], omega[n])


def test_prime_sieve_small():
    assert prime_sieve(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_sieve(1).tolist() == []


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


@given(st.integers(1, 2000), st.integers(1, 2000))
def test_mobius_and_phi_multiplicative(a, b):
    from math import gcd
    if gcd(a, b) == 1:
        assert mobius(a * b) == mobius(a) * mobius(b)
        assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)


def test_crt_lift():
    x = crt_lift(2, 5, 20)
    assert x % 5 == 2 and x % 4 == 1


def test_roots_of_unity_exact_when_real():
    assert root_of_unity(Fraction(0)) == 1
    assert root_of_unity(Fraction(3, 2)) == -1
    assert cyclotomic_sum({Fraction(0): Fraction(1, 3), Fraction(1, 2): Fraction(1, 2)}) == Fraction(-1, 6)
    z = cyclotomic_sum({Fraction(1, 3): Fraction(1), Fraction(2, 3): Fraction(1)})
    assert abs(z + 1) < 1e-12
