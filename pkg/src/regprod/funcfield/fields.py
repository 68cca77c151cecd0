"""Finite fields GF(p^n) with elements encoded as integers.

An element ``sum c_i x^i`` (``0 <= c_i < p``) is the integer ``sum c_i p^i``,
so the prime field sits inside as ``0 .. p-1``.  Multiplication goes through
discrete log tables built from a primitive element; addition is digit-wise.
All operations accept numpy arrays.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p


def irreducible_polynomials(p: int, n: int):
    """Monic irreducible polynomials of degree ``n`` over GF(p), lexicographic.

    Each is a coefficient list, highest degree first.
    """
    for tail in itertools.product(range(p), repeat=n):
        poly = [1, *tail]
        if n == 1 or (tail[-1] != 0 and gf_irreducible_p(poly, p, ZZ)):
            yield poly


class FiniteField:
    def __init__(self, p: int, n: int = 1, modulus: list[int] | None = None):
        if p < 2 or factorint(p) != {p: 1}:
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("degree must be positive")
        if modulus is None:
            modulus = next(irreducible_polynomials(p, n))
        modulus = [c % p for c in modulus]
        if len(modulus) != n + 1 or modulus[0] != 1:
            raise ValueError("modulus must be monic of degree n")
        if n > 1 and not gf_irreducible_p(modulus, p, ZZ):
            raise ValueError(f"{modulus} is reducible over GF({p})")
        self.p, self.n = p, n
        self.q = p**n
        self.modulus = tuple(modulus)
        self._build_tables()

    def __repr__(self):
        return f"FiniteField({self.p}, {self.n}, modulus={list(self.modulus)})"

    # -- scalar polynomial arithmetic used only while building tables --

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _from_digits(self, d) -> int:
        v = 0
        for c in reversed(d):
            v = v * self.p + c
        return v

    def _mul_slow(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce with x^n = -(m_1 x^{n-1} + ... + m_n)
        low = list(reversed(self.modulus[1:]))
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, m in enumerate(low):
                    prod[k - n + i] = (prod[k - n + i] - c * m) % p
        return self._from_digits(prod[:n])

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _build_tables(self):
        q = self.q
        order = q - 1
        cofactors = [order // r for r in factorint(order)] if order > 1 else []
        for g in range(1, q):
            if all(self._pow_slow(g, c) != 1 for c in cofactors):
                break
        self.generator = g
        exp = np.empty(2 * order if order else 1, dtype=np.int64)
        v = 1
        for k in range(order):
            exp[k] = v
            v = self._mul_slow(v, g)
        if order:
            exp[order:] = exp[:order]
        else:
            exp[0] = 1
        log = np.full(q, -1, dtype=np.int64)
        log[exp[:order]] = np.arange(order)
        self._exp, self._log = exp, log

    # -- vectorized field operations --

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.n):
            out += ((a // pw % self.p + b // pw % self.p) % self.p) * pw
            pw *= self.p
        return out

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        out = np.zeros_like(a)
        pw = 1
        for _ in range(self.n):
            out += ((-(a // pw % self.p)) % self.p) * pw
            pw *= self.p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        la, lb = self._log[a], self._log[b]
        out = self._exp[(la + lb) % (self.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        la = self._log[a]
        out = self._exp[(la * e) % (self.q - 1)]
        return np.where(la < 0, 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def log(self, a):
        """Discrete log to base ``self.generator`` (-1 for zero)."""
        return self._log[np.asarray(a, dtype=np.int64)]

    def embed(self, c: int) -> int:
        """Image of an integer in the prime field."""
        return c % self.p


@lru_cache(maxsize=64)
def field(p: int, n: int, modulus: tuple[int, ...] | None = None) -> FiniteField:
    return FiniteField(p, n, list(modulus) if modulus else None)
