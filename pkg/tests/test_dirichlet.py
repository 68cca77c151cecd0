from fractions import Fraction
from math import gcd

import pytest

import mpmath

from regprod.arith import euler_phi, to_mp, working_precision
from regprod.dirichlet import (
    DirichletCharacter,
    character_subsets,
    conductor_and_primitive,
    enumerate_characters,
    kronecker_symbol,
)


def _exact_sum(values):
    with working_precision(128):
        return sum(values)


def test_mod4_table():
    chars = enumerate_characters(4)
    assert len(chars) == 2 and chars[0].is_principal
    chi = chars[1]
    assert chi(1) == 1 and chi(3) == -1 and chi(2) == 0
    assert chi.parity == -1 and chi * chi == chars[0]


def test_trivial_modulus():
    (chi,) = enumerate_characters(1)
    assert all(chi(n) == 1 for n in range(-5, 20))


def test_mod8_group_is_klein():
    chars = enumerate_characters(8)
    assert len(chars) == 4
    assert all((c * c).is_principal for c in chars)


@pytest.mark.parametrize("m", range(1, 25))
def test_orthogonality_and_group_laws(m):
    chars = enumerate_characters(m)
    phi = euler_phi(m)
    assert len(chars) == phi and len(set(chars)) == phi and chars[0].is_principal
    for a in range(m):
        for b in range(m):
            with working_precision(128):
                s = _exact_sum([to_mp(c(a)) * mpmath.conj(to_mp(c(b))) for c in chars])
            expected = phi if (a - b) % m == 0 and gcd(a * b, m) == 1 else 0
            assert abs(s - expected) < 1e-20
    for c in chars:
        assert (c ** phi).is_principal
        assert (c * c.inverse()).is_principal
        assert c(1) == 1
        for n in range(m):
            assert (c(n) == 0) == (gcd(n, m) > 1)
            assert c(n) == c(n + m)


@pytest.mark.parametrize("m", [5, 7, 9, 12, 15, 16])
def test_multiplicativity(m):
    for c in enumerate_characters(m):
        for a in range(m):
            for b in range(m):
                assert c.angle(a * b) == (None if c.angle(a) is None or c.angle(b) is None
                                          else (c.angle(a) + c.angle(b)) % 1)


def test_conductor():
    chi0, chi4 = enumerate_characters(4)
    assert conductor_and_primitive(chi0).conductor == 1
    data = conductor_and_primitive(chi4)
    assert data.conductor == 4 and chi4.is_primitive
    lifted = [c for c in enumerate_characters(8) if all(c(n) == chi4(n) for n in (1, 3, 5, 7))]
    assert len(lifted) == 1
    data = conductor_and_primitive(lifted[0])
    assert data.conductor == 4 and data.primitive == chi4


@pytest.mark.parametrize("m", range(1, 41))
def test_conductor_minimal_period(m):
    for c in enumerate_characters(m):
        f = c.conductor()
        star = c.primitive()
        assert m % f == 0 and star.modulus == f and star.is_primitive
        assert all(c(n) == star(n) for n in range(m) if gcd(n, m) == 1)
        # no proper divisor of f induces c
        for d in range(1, f):
            if f % d == 0:
                ok = all(c(a) == c(b) for a in range(m) for b in range(a, m, d)
                         if gcd(a * b, m) == 1)
                assert not ok


def test_modulus_mismatch():
    with pytest.raises(ValueError):
        enumerate_characters(4)[1] * enumerate_characters(3)[1]


def test_subsets():
    chi0, chi4 = enumerate_characters(4)
    s = character_subsets(4, 2)
    assert set(s.zero) == {chi0, chi4} and not s.minus
    s = character_subsets(4, 1)
    assert s.minus == (chi4,) and s.zero == (chi0,)
    s = character_subsets(3, 2)
    assert len(s.zero) == 2 and not s.minus


@pytest.mark.parametrize("m", range(1, 25))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_subsets_partition(m, n):
    s = character_subsets(m, n)
    assert set(s.plus) | set(s.minus) == set(enumerate_characters(m))
    assert not (set(s.plus) & set(s.minus))
    if n % 2 == 0:
        assert not s.minus


def test_from_angles_and_kronecker():
    chi = DirichletCharacter.from_angles(5, lambda g: Fraction(1, 2))
    assert chi.is_real and chi(2) == -1 and chi(4) == 1
    assert [kronecker_symbol(-4, n) for n in range(1, 8)] == [1, 0, -1, 0, 1, 0, -1]
    assert kronecker_symbol(5, 2) == -1
