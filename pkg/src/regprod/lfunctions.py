"""Dirichlet L-functions at s = 0: values, Taylor data and reciprocal Laurent data."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .arith import PrecisionError, factorize, prime_factors, to_mp, working_precision, cyclotomic_sum
from .dirichlet import DirichletCharacter
from .series import TruncatedSeries
from .special import (
    HurwitzEvaluator,
    bernoulli,
    complete_bell,
    default_evaluator,
    riemann_taylor_at_zero,
)

MAX_ORDER = 6


@dataclass(frozen=True)
class LSeriesExpansion:
    character: DirichletCharacter
    order_of_vanishing: int
    taylor: TruncatedSeries
    inverse: TruncatedSeries
    diagnostics: dict = field(default_factory=dict, compare=False)

    def derivative(self, k: int):
        """``L^{(k)}(0, chi)``."""
        return self.taylor[k] * math.factorial(k)


def l_at_zero(chi: DirichletCharacter):
    """``L(0, chi) = -(1/m) sum chi(a) a`` for non-principal chi, 0 for principal.

    Exact Fraction for real characters, mpmath complex otherwise.
    """
    if chi.is_principal:
        return Fraction(0)
    m = chi.modulus
    by_angle: dict[Fraction, Fraction] = defaultdict(Fraction)
    for a in range(1, m + 1):
        angle = chi.angle(a)
        if angle is not None:
            by_angle[angle] -= Fraction(a, m)
    return cyclotomic_sum(by_angle)


def _vanishing_euler_primes(chi: DirichletCharacter) -> list[int]:
    star = chi.primitive()
    f = star.modulus
    return [p for p in prime_factors(chi.modulus) if f % p and star.angle(p) == 0]


def order_of_vanishing(chi: DirichletCharacter) -> int:
    """Order of the zero of ``L(s, chi)`` at ``s = 0``.

    For an imprimitive character each Euler factor ``1 - chi*(p) p^{-s}`` with
    ``chi*(p) = 1`` contributes one more zero on top of the primitive order.
    """
    if chi.is_principal:
        return len(factorize(chi.modulus))
    base = 1 if chi.is_even else 0
    return base + len(_vanishing_euler_primes(chi))


def _one_minus_exp(alpha, lam, order: int) -> TruncatedSeries:
    """Series of ``1 - alpha * exp(-lam * s)``."""
    return 1 - TruncatedSeries.exp_linear(-lam, order) * alpha


@lru_cache(maxsize=1024)
def _taylor(chi: DirichletCharacter, order: int, ev: HurwitzEvaluator) -> tuple[TruncatedSeries, float]:
    with working_precision(ev.precision):
        if chi.is_principal:
            zeta = TruncatedSeries.from_coeffs(riemann_taylor_at_zero(order, ev), 0, order)
            err = ev.taylor_at_zero(1, order).error
            series = zeta
            for p in prime_factors(chi.modulus):
                series = series * _one_minus_exp(1, mpmath.log(p), order)
            return series, err
        star = chi.primitive()
        f = star.modulus
        acc = [mpmath.mpc(0)] * (order + 1)
        err = mpmath.mpf(0)
        for a in range(1, f + 1):
            if star.angle(a) is None:
                continue
            value = to_mp(star(a))
            data = ev.taylor_at_zero(Fraction(a, f), order)
            err = max(err, data.error)
            for k, c in enumerate(data.coefficients):
                acc[k] += value * c
        series = TruncatedSeries.from_coeffs(acc, 0, order)
        series = series * TruncatedSeries.exp_linear(-mpmath.log(f), order)
        for p in prime_factors(chi.modulus):
            if f % p:
                series = series * _one_minus_exp(to_mp(star(p)), mpmath.log(p), order)
        if chi.is_real:
            series = series.map(mpmath.re)
        return series, err


def l_taylor_at_zero(chi: DirichletCharacter, order: int, evaluator: HurwitzEvaluator | None = None) -> LSeriesExpansion:
    """Taylor data of ``L(s, chi)`` at 0 through ``s^order`` plus the reciprocal Laurent data."""
    if order > MAX_ORDER:
        raise ValueError(f"derivative order above {MAX_ORDER} is not supported")
    ev = evaluator or default_evaluator()
    with working_precision(ev.precision):
        series, err = _taylor(chi, order, ev)
        ord0 = order_of_vanishing(chi)
        tol = _tolerance(ev)
        leftovers = [abs(series[k]) for k in range(min(ord0, order + 1))]
        if any(v > tol for v in leftovers):
            raise PrecisionError(
                f"L(s, {chi.label}) should vanish to order {ord0} but has |c_k| = "
                f"{[mpmath.nstr(v, 5) for v in leftovers]}"
            )
        coeffs = [0] * min(ord0, order + 1) + list(series.coeffs[ord0:])
        series = TruncatedSeries.from_coeffs(coeffs, 0, order)
        diagnostics = {"hurwitz_error": float(err), "vanishing_residual": float(max(leftovers, default=0))}
        inverse = None
        if order >= ord0:
            lead = series[ord0]
            if abs(lead) <= tol:
                raise PrecisionError(f"leading Taylor coefficient of L(s, {chi.label}) below tolerance")
            inverse = TruncatedSeries(ord0, series.coeffs[ord0:], order).inverse()
            check = (inverse * TruncatedSeries(ord0, series.coeffs[ord0:], order))
            residual = max(abs(check[k] - (1 if k == 0 else 0)) for k in range(check.low, check.order + 1))
            diagnostics["remultiplication_residual"] = float(residual)
        return LSeriesExpansion(chi, ord0, series, inverse, diagnostics)


def _tolerance(ev: HurwitzEvaluator):
    return mpmath.mpf(2) ** (-(ev.precision // 2))


def inverse_l_laurent(chi: DirichletCharacter, upto: int, evaluator: HurwitzEvaluator | None = None) -> TruncatedSeries:
    """Laurent coefficients of ``1/L(t, chi)`` for exponents ``-ord .. upto``."""
    ord0 = order_of_vanishing(chi)
    # inverting a series of valuation r costs r orders of accuracy
    exp = l_taylor_at_zero(chi, 2 * ord0 + upto, evaluator)
    return exp.inverse.truncate(upto)


def logderiv_residue(chi: DirichletCharacter, evaluator: HurwitzEvaluator | None = None):
    """``Res_{s=0} L'(s, chi) / (s L(s, chi)) = L^{(r+1)}(0) / ((r+1) L^{(r)}(0))``."""
    r = order_of_vanishing(chi)
    exp = l_taylor_at_zero(chi, r + 1, evaluator)
    with working_precision((evaluator or default_evaluator()).precision):
        return exp.taylor[r + 1] / exp.taylor[r]


@dataclass(frozen=True)
class PrincipalResidue:
    modulus: int
    bell: object
    laurent: object
    difference: object

    @property
    def value(self):
        return self.laurent


def principal_residue_b(m: int, evaluator: HurwitzEvaluator | None = None, tol: float = 1e-8) -> PrincipalResidue:
    """``b_{omega(m)} = Res_{s=0} 1/(s L(s, chi_0))`` by two independent routes.

    (a) Bell polynomials: with ``lam_i = log p_i``,
        ``1/(s L) = (1/zeta(s)) s^{-omega-1} / prod(lam_i) * exp(sum_k y_k s^k / k!)``
        where ``y_k = -B_k/k * sum_i lam_i^k``; the residue is
        ``(1/(omega! prod lam_i)) sum_j C(omega, j) (1/zeta)^{(j)}(0) B_{omega-j}(y_1, ...)``.
    (b) direct Laurent inversion of the Taylor data of ``L(s, chi_0)``.
    """
    if m < 2:
        raise ValueError("principal residue needs m >= 2")
    ev = evaluator or default_evaluator()
    with working_precision(ev.precision):
        primes = prime_factors(m)
        w = len(primes)
        lams = [mpmath.log(p) for p in primes]
        zeta = TruncatedSeries.from_coeffs(riemann_taylor_at_zero(w, ev), 0, w)
        inv_zeta = zeta.inverse()
        ys = [-to_mp(bernoulli(k)) / k * mpmath.fsum(l**k for l in lams) for k in range(1, w + 1)]
        acc = mpmath.fsum(
            math.comb(w, j) * inv_zeta[j] * math.factorial(j) * complete_bell(ys[: w - j])
            for j in range(w + 1)
        )
        bell = acc / (math.factorial(w) * mpmath.fprod(lams))
        chi0 = DirichletCharacter.principal(m)
        laurent = inverse_l_laurent(chi0, 0, ev)[0]
        diff = abs(bell - laurent)
        if diff > tol:
            raise PrecisionError(f"b_omega paths disagree for m={m}: |diff| = {mpmath.nstr(diff, 5)}")
        return PrincipalResidue(m, bell, laurent, diff)
