from fractions import Fraction

import mpmath
import pytest

from regprod.arith import PrecisionError, prime_factors, to_mp, working_precision
from regprod.dirichlet import DirichletCharacter, enumerate_characters
from regprod.lfunctions import (
    inverse_l_laurent,
    l_at_zero,
    l_taylor_at_zero,
    logderiv_residue,
    order_of_vanishing,
    principal_residue_b,
)
from regprod.special import HurwitzEvaluator, char_bernoulli

# mpmath oracles, frozen
L1_CHI4 = "0.391594392706836776471945346899"
B_M6 = "-0.146843519065332295823673521985"
L1_CHI5 = "0.481211825059603447497758913424"
L2_CHI5_HALF = "-0.010598525794887081628891282007"


def mp(s):
    with working_precision(160):
        return mpmath.mpf(s)


def _oracle_taylor(chi, order):
    """Taylor coefficients of L(s, chi) at 0 through mpmath's Hurwitz zeta."""
    m = chi.modulus
    with working_precision(160):
        f = lambda s: mpmath.power(m, -s) * mpmath.fsum(
            to_mp(chi(a)) * mpmath.zeta(s, mpmath.mpf(a) / m) for a in range(1, m + 1) if chi(a) != 0)
        return mpmath.taylor(f, 0, order)


def test_mod4_values():
    chi = enumerate_characters(4)[1]
    assert l_at_zero(chi) == Fraction(1, 2)
    exp = l_taylor_at_zero(chi, 1)
    with working_precision(160):
        assert abs(exp.derivative(1) - mp(L1_CHI4)) < 1e-25
        assert abs(exp.derivative(1) - mpmath.log(mpmath.gamma(0.25) ** 2 / (2 * mpmath.pi * mpmath.sqrt(2)))) < 1e-25


def test_mod5_even_real_character():
    chi = [c for c in enumerate_characters(5) if c.is_real and not c.is_principal][0]
    exp = l_taylor_at_zero(chi, 2)
    assert exp.order_of_vanishing == 1 and exp.taylor[0] == 0
    with working_precision(160):
        assert abs(exp.taylor[1] - mp(L1_CHI5)) < 1e-25
        assert abs(exp.taylor[1] - mpmath.log(mpmath.phi)) < 1e-25
        assert abs(exp.taylor[2] - mp(L2_CHI5_HALF)) < 1e-25


@pytest.mark.parametrize("m", range(1, 13))
def test_bernoulli_special_values(m):
    for chi in enumerate_characters(m):
        if chi.modulus != chi.conductor():
            continue
        for n in (1, 2, 3):
            with working_precision(128):
                oracle = -to_mp(char_bernoulli(n, chi)) / n
                if chi.is_principal and n == 1 and m == 1:
                    oracle = mpmath.mpf(-0.5)
                value = mpmath.zeta(1 - n, 1) if m == 1 else mpmath.fsum(
                    to_mp(chi(a)) * mpmath.power(m, n - 1) * mpmath.zeta(1 - n, mpmath.mpf(a) / m)
                    for a in range(1, m + 1) if chi(a) != 0)
                assert abs(value - oracle) < 1e-9
        if not chi.is_principal:
            assert abs(to_mp(l_at_zero(chi)) + to_mp(char_bernoulli(1, chi))) < 1e-9


@pytest.mark.parametrize("m", [3, 4, 5, 7, 8, 12, 15])
def test_taylor_against_oracle(m):
    for chi in enumerate_characters(m):
        exp = l_taylor_at_zero(chi, 3)
        oracle = _oracle_taylor(chi, 3)
        for k in range(4):
            assert abs(exp.taylor[k] - oracle[k]) < 1e-20


@pytest.mark.parametrize("m", [3, 4, 5, 12, 30])
def test_taylor_consistent_off_anchor(m):
    # the Taylor polynomial evaluated near 0 agrees with a direct evaluation there
    ev = HurwitzEvaluator()
    for chi in enumerate_characters(m):
        exp = l_taylor_at_zero(chi, 6, ev)
        s = mpmath.mpf("0.01")
        approx = sum(exp.taylor[k] * s**k for k in range(7))
        with working_precision(128):
            direct = mpmath.power(m, -s) * mpmath.fsum(
                to_mp(chi(a)) * ev.zeta(s, Fraction(a, m)) for a in range(1, m + 1) if chi(a) != 0)
        assert abs(approx - direct) < 1e-8


def test_order_of_vanishing():
    chi0_4, chi4 = enumerate_characters(4)
    assert order_of_vanishing(chi0_4) == 1
    assert order_of_vanishing(chi4) == 0
    assert order_of_vanishing(DirichletCharacter.principal(30)) == 3
    # mod-55 character induced by the Legendre symbol mod 5: chi*(11) = 1 adds a zero
    legendre55 = [c for c in enumerate_characters(55) if c.conductor() == 5 and c.is_real and not c.is_principal]
    assert len(legendre55) == 1 and order_of_vanishing(legendre55[0]) == 2
    exp = l_taylor_at_zero(legendre55[0], 3)
    assert exp.taylor[0] == 0 and exp.taylor[1] == 0 and abs(exp.taylor[2]) > 1e-3


@pytest.mark.parametrize("m", [4, 5, 12, 30, 55])
def test_inverse_remultiplication(m):
    for chi in enumerate_characters(m)[:8]:
        exp = l_taylor_at_zero(chi, 4)
        assert exp.diagnostics["remultiplication_residual"] <= 1e-10


def test_inverse_laurent_low_exponent():
    inv = inverse_l_laurent(DirichletCharacter.principal(6), 1)
    assert inv.low == -2


@pytest.mark.parametrize("m", [2, 4, 6, 12, 30])
def test_principal_residue_paths_agree(m):
    res = principal_residue_b(m)
    assert res.difference <= 1e-8


def test_principal_residue_values():
    with working_precision(160):
        b2 = principal_residue_b(2).value
        assert abs(b2 - (2 * mpmath.log(2 * mpmath.pi) / mpmath.log(2) - 1)) < 1e-25
        assert abs(principal_residue_b(6).value - mp(B_M6)) < 1e-25


def test_logderiv_residue_mod4():
    chi = enumerate_characters(4)[1]
    with working_precision(160):
        assert abs(logderiv_residue(chi) - 2 * mp(L1_CHI4)) < 1e-25


def test_order_limit():
    with pytest.raises(ValueError):
        l_taylor_at_zero(enumerate_characters(4)[1], 7)


def test_low_precision_detects_nonvanishing():
    # a coarse evaluator cannot reach the tolerance demanded at 256 bits
    ev = HurwitzEvaluator(terms=10, tail=4, precision=256)
    chi = [c for c in enumerate_characters(5) if c.is_real and not c.is_principal][0]
    with pytest.raises(PrecisionError):
        l_taylor_at_zero(chi, 2, ev)
