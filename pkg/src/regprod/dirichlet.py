"""Dirichlet characters modulo m.

``(Z/m)^*`` is split by CRT into cyclic factors (``2^k`` contributes
``C2 x C_{2^(k-2)}`` for ``k >= 3``).  A character is an exponent vector on the
chosen generators; its values are kept as exact angles ``k/n`` with
``chi(a) = exp(2 pi i k/n)`` and only turned into floats on request.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Callable

from sympy.ntheory import primitive_root

from .arith import crt_lift, divisors, factorize, root_of_unity


@dataclass(frozen=True)
class UnitGroup:
    modulus: int
    orders: tuple[int, ...]
    generators: tuple[int, ...]
    dlog: dict

    @property
    def size(self) -> int:
        n = 1
        for o in self.orders:
            n *= o
        return n


@lru_cache(maxsize=256)
def unit_group(m: int) -> UnitGroup:
    if m < 1:
        raise ValueError("modulus must be positive")
    orders: list[int] = []
    gens: list[int] = []
    for p, e in factorize(m).items():
        pe = p**e
        if p == 2:
            if e == 1:
                continue
            local = [(pe - 1, 2)] if e == 2 else [(pe - 1, 2), (5, 2 ** (e - 2))]
        else:
            local = [(primitive_root(pe), (p - 1) * p ** (e - 1))]
        for g, order in local:
            gens.append(crt_lift(g, pe, m))
            orders.append(order)
    dlog: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(o) for o in orders)):
        a = 1
        for g, k in zip(gens, exps):
            a = a * pow(g, k, m) % m
        dlog[a % m] = exps
    if m == 1:
        dlog = {0: ()}
    return UnitGroup(m, tuple(orders), tuple(gens), dlog)


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        group = unit_group(self.modulus)
        if len(self.exponents) != len(group.orders):
            raise ValueError(f"mod {self.modulus} characters need {len(group.orders)} exponents")
        object.__setattr__(
            self, "exponents", tuple(e % o for e, o in zip(self.exponents, group.orders))
        )

    @classmethod
    def principal(cls, m: int) -> "DirichletCharacter":
        return cls(m, (0,) * len(unit_group(m).orders))

    @classmethod
    def from_angles(cls, m: int, angle: Callable[[int], Fraction]) -> "DirichletCharacter":
        """Build the character mod ``m`` whose value at each generator has the given angle."""
        group = unit_group(m)
        exps = []
        for g, order in zip(group.generators, group.orders):
            k = angle(g) * order
            if k.denominator != 1:
                raise ValueError(f"angle at generator {g} is not an {order}-th root of unity")
            exps.append(int(k))
        chi = cls(m, tuple(exps))
        return chi

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @cached_property
    def _angles(self) -> tuple:
        m = self.modulus
        table = []
        for a in range(m):
            if gcd(a, m) != 1:
                table.append(None)
                continue
            logs = self.group.dlog[a % m]
            angle = sum(
                (Fraction(e * k, o) for e, k, o in zip(self.exponents, logs, self.group.orders)),
                Fraction(0),
            )
            table.append(angle % 1)
        return tuple(table)

    def angle(self, n: int) -> Fraction | None:
        """``chi(n) = exp(2 pi i angle)``; None when ``gcd(n, m) > 1``."""
        return self._angles[n % self.modulus]

    def __call__(self, n: int):
        a = self.angle(n)
        return 0 if a is None else root_of_unity(a)

    def values(self) -> list:
        return [self(n) for n in range(self.modulus)]

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exponents)

    @property
    def is_real(self) -> bool:
        return all(a is None or a in (0, Fraction(1, 2)) for a in self._angles)

    @property
    def parity(self) -> int:
        """``chi(-1)``, always +1 or -1."""
        return 1 if self.angle(-1) == 0 else -1

    @property
    def is_even(self) -> bool:
        return self.parity == 1

    @property
    def order(self) -> int:
        n = 1
        for e, o in zip(self.exponents, self.group.orders):
            k = o // gcd(e, o)
            n = n * k // gcd(n, k)
        return n

    def _check_same(self, other: "DirichletCharacter"):
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        self._check_same(other)
        return DirichletCharacter(
            self.modulus, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __pow__(self, n: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(n * e for e in self.exponents))

    def inverse(self) -> "DirichletCharacter":
        return self ** -1

    conjugate = inverse

    def conductor(self) -> int:
        m = self.modulus
        for f in divisors(m):
            if all(
                self.angle(a) == 0 for a in range(1, m, f) if gcd(a, m) == 1
            ):
                return f
        return m

    def primitive(self) -> "DirichletCharacter":
        """The primitive character mod the conductor inducing this one."""
        f = self.conductor()
        m = self.modulus

        def angle(b: int) -> Fraction:
            a = b
            while gcd(a, m) != 1:
                a += f
            return self.angle(a)

        return DirichletCharacter.from_angles(f, angle)

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    @property
    def label(self) -> str:
        return f"{self.modulus}:{','.join(map(str, self.exponents)) or '-'}"

    def __repr__(self) -> str:
        return f"DirichletCharacter({self.label})"


@dataclass(frozen=True)
class ConductorData:
    conductor: int
    primitive: DirichletCharacter


def conductor_and_primitive(chi: DirichletCharacter) -> ConductorData:
    return ConductorData(chi.conductor(), chi.primitive())


@lru_cache(maxsize=256)
def _characters(m: int) -> tuple[DirichletCharacter, ...]:
    group = unit_group(m)
    return tuple(
        DirichletCharacter(m, exps) for exps in itertools.product(*(range(o) for o in group.orders))
    )


def enumerate_characters(m: int) -> list[DirichletCharacter]:
    """All ``phi(m)`` characters mod ``m``, principal first, in a fixed order."""
    return list(_characters(m))


@dataclass(frozen=True)
class CharacterSubsets:
    plus: tuple[DirichletCharacter, ...]
    minus: tuple[DirichletCharacter, ...]
    zero: tuple[DirichletCharacter, ...]


def character_subsets(m: int, n: int) -> CharacterSubsets:
    """Split characters mod ``m`` by the parity of ``chi^n`` and by ``chi^n`` principal."""
    if n < 1:
        raise ValueError("n must be positive")
    chars = enumerate_characters(m)
    powers = [chi**n for chi in chars]
    return CharacterSubsets(
        plus=tuple(c for c, p in zip(chars, powers) if p.parity == 1),
        minus=tuple(c for c, p in zip(chars, powers) if p.parity == -1),
        zero=tuple(c for c, p in zip(chars, powers) if p.is_principal),
    )


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol ``(d/n)`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d/n) for odd n
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
