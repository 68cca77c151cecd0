"""Elementary arithmetic: factorizations, multiplicative functions, sieves, precision.

Exact rationals are :class:`fractions.Fraction`; high-precision floats are
:mod:`mpmath` numbers evaluated at a working precision chosen per call.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import mpmath
import numpy as np
from sympy import factorint

DEFAULT_PRECISION_BITS = 128
PRECISION_ENV_VAR = "REGPROD_PRECISION_BITS"


class PrecisionError(ArithmeticError):
    """A numerical result could not be resolved at the working precision."""


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 53:
        raise ValueError(f"{PRECISION_ENV_VAR} must be at least 53, got {bits}")
    return bits


@contextmanager
def working_precision(bits: int | None = None):
    """Run mpmath arithmetic at ``bits`` (default: :func:`default_precision`)."""
    with mpmath.workprec(bits or default_precision()):
        yield


def to_mp(x):
    """Convert ints, Fractions, floats or complex numbers to mpmath scalars."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return x
    if isinstance(x, complex):
        return mpmath.mpc(x)
    return mpmath.mpf(x)


def root_of_unity(angle: Fraction):
    """``exp(2*pi*i*angle)``; exact ints for the real roots +1 and -1."""
    angle = angle % 1
    if angle == 0:
        return 1
    if angle == Fraction(1, 2):
        return -1
    return mpmath.expjpi(2 * to_mp(angle))


def cyclotomic_sum(terms: dict[Fraction, Fraction]):
    """Evaluate ``sum c * exp(2 pi i angle)`` over ``{angle: c}``.

    Stays an exact Fraction when only the angles 0 and 1/2 carry weight.
    """
    live = {a % 1: c for a, c in terms.items() if c != 0}
    if all(a in (0, Fraction(1, 2)) for a in live):
        return sum((c if a == 0 else -c for a, c in live.items()), Fraction(0))
    return mpmath.fsum(to_mp(c) * root_of_unity(a) for a, c in live.items())


Factorization = dict[int, int]


@dataclass(frozen=True)
class MultiplicativeInvariants:
    mobius: int
    phi: int
    omega: int
    factorization: Factorization


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def factorize(n: int) -> Factorization:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"expected a positive integer, got {n!r}")
    return dict(_factor(n))


def multiplicative_invariants(n: int) -> MultiplicativeInvariants:
    """Möbius, Euler phi and number of distinct prime factors of ``n``."""
    fac = factorize(n)
    phi = 1
    for p, e in fac.items():
        phi *= (p - 1) * p ** (e - 1)
    if any(e > 1 for e in fac.values()):
        mu = 0
    else:
        mu = (-1) ** len(fac)
    return MultiplicativeInvariants(mobius=mu, phi=phi, omega=len(fac), factorization=fac)


def mobius(n: int) -> int:
    return multiplicative_invariants(n).mobius


def euler_phi(n: int) -> int:
    return multiplicative_invariants(n).phi


def prime_factors(n: int) -> list[int]:
    return list(factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    return mobius(n) != 0


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def prime_sieve(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def mobius_sieve(limit: int) -> np.ndarray:
    """Array ``mu`` with ``mu[n]`` the Möbius function for ``0 <= n <= limit`` (``mu[0] = 0``)."""
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in prime_sieve(limit):
        p = int(p)
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    return mu


def crt_lift(residue: int, modulus: int, full: int) -> int:
    """The unique x mod ``full`` with x = residue mod ``modulus`` and x = 1 mod full/modulus."""
    other = full // modulus
    if gcd(modulus, other) != 1:
        raise ValueError("moduli must be coprime")
    if other == 1:
        return residue % modulus
    # x = residue + modulus * k, need residue + modulus*k = 1 (mod other)
    k = ((1 - residue) * pow(modulus, -1, other)) % other
    return (residue + modulus * k) % full
