"""Bernoulli and Bell polynomials, log-Gamma and the Hurwitz zeta function near s = 0.

Hurwitz zeta is continued by Euler-Maclaurin summation; Taylor coefficients at
``s = 0`` come from a discrete Cauchy integral on a small circle, evaluated
with twice the configured node count so the half-node estimate doubles as an
error bound.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

from .arith import PrecisionError, cyclotomic_sum, to_mp, working_precision
from .series import TruncatedSeries


class HurwitzConvergenceError(PrecisionError):
    """Euler-Maclaurin tail too large for the requested accuracy."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for k in range(1, n + 1):
        acc = sum((math.comb(k + 1, j) * table[j] for j in range(k)), Fraction(0))
        table.append(-acc / (k + 1))
    return tuple(table)


def bernoulli(k: int) -> Fraction:
    """Bernoulli number with ``B_1 = -1/2`` (coefficients of ``s/(e^s - 1)``)."""
    if k < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    # grow the cache in blocks so repeated calls stay cheap
    size = max(32, 1 << (k.bit_length()))
    return _bernoulli_table(size)[k]


def bernoulli_poly(k: int, x):
    return sum((math.comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


def complete_bell(args: Sequence) -> object:
    """Complete Bell polynomial ``B_r(x_1, ..., x_r)`` with ``r = len(args)``."""
    r = len(args)
    bell = [Fraction(1)]
    for n in range(r):
        bell.append(sum((math.comb(n, i) * bell[n - i] * args[i] for i in range(n + 1)), Fraction(0)))
    return bell[r]


def generalized_bernoulli_series(x, alphas: Sequence, a_values: Sequence, order: int) -> TruncatedSeries:
    """Expansion of ``s^l e^{x s} / prod_j (alpha_j e^{a_j s} - 1)`` through ``s^order``.

    When the result is a power series its ``k``-th coefficient times ``k!`` is
    the generalized Bernoulli polynomial of index ``k``.
    """
    if len(alphas) != len(a_values):
        raise ValueError("alphas and a_values must have equal length")
    ell = len(alphas)
    work = order + ell + 1
    num = TruncatedSeries.exp_linear(x, work)
    num = TruncatedSeries(ell, num.coeffs, work + ell)
    den = TruncatedSeries.one(work)
    for alpha, a in zip(alphas, a_values):
        if alpha == 1 and a == 0:
            raise ValueError("denominator factor alpha*e^(a s) - 1 vanishes identically")
        factor = TruncatedSeries.exp_linear(a, work) * alpha - 1
        den = den * factor.normalized()
    result = num * den.normalized().inverse()
    return result.truncate(order)


def char_bernoulli(n: int, chi):
    """Generalized Bernoulli number ``B_{n,chi}`` using the character's own modulus.

    Exact (a Fraction) for real-valued characters, an mpmath complex otherwise.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    f = chi.modulus
    by_angle: dict[Fraction, Fraction] = defaultdict(Fraction)
    for a in range(1, f + 1):
        angle = chi.angle(a)
        if angle is None:
            continue
        by_angle[angle] += Fraction(f) ** (n - 1) * bernoulli_poly(n, Fraction(a, f))
    return cyclotomic_sum(by_angle)


def log_gamma(x, prec: int | None = None):
    """``log Gamma(x)`` for real ``x > 0`` by Stirling's series after an upward shift."""
    with working_precision(prec):
        x = to_mp(x)
        if x <= 0:
            raise ValueError("log_gamma needs x > 0")
        z0 = max(30, mpmath.mp.prec // 2)
        shift = mpmath.mpf(0)
        z = x
        while z < z0:
            shift += mpmath.log(z)
            z += 1
        s = (z - mpmath.mpf(1) / 2) * mpmath.log(z) - z + mpmath.log(2 * mpmath.pi) / 2
        zpow = z
        z2 = z * z
        for j in range(1, 21):
            s += to_mp(bernoulli(2 * j)) / ((2 * j) * (2 * j - 1) * zpow)
            zpow *= z2
        return +(s - shift)


@dataclass(frozen=True)
class HurwitzEvaluator:
    """Configuration of the Hurwitz zeta kernel.

    ``terms`` is the Euler-Maclaurin cutoff N, ``tail`` the number M of
    Bernoulli corrections; ``radius`` and ``nodes`` set the Cauchy circle.
    """

    precision: int = 128
    terms: int = 30
    tail: int = 20
    radius: Fraction = Fraction(1, 4)
    nodes: int = 64
    tolerance: float = 1e-25

    def __post_init__(self):
        if self.terms < 10:
            raise ValueError("Euler-Maclaurin cutoff must be at least 10")
        if self.tail < 2 or self.tail % 2:
            raise ValueError("tail order must be even and at least 2")
        if not 0 < self.radius < Fraction(1, 2):
            raise ValueError("Cauchy radius must lie in (0, 1/2)")
        if self.nodes < 8:
            raise ValueError("need at least 8 Cauchy nodes")
        if self.precision < 53:
            raise ValueError("precision must be at least 53 bits")

    def zeta(self, s, x):
        """``zeta_H(s, x)`` for ``s != 1`` and real ``x > 0``."""
        with working_precision(self.precision):
            value, err = self._euler_maclaurin(to_mp(s), to_mp(x))
            return value

    def _euler_maclaurin(self, s, x):
        if x <= 0:
            raise ValueError("Hurwitz zeta needs x > 0")
        if s == 1:
            raise ZeroDivisionError("Hurwitz zeta has a pole at s = 1")
        n = self.terms
        total = mpmath.fsum(mpmath.exp(-s * mpmath.log(k + x)) for k in range(n))
        w = n + x
        lw = mpmath.log(w)
        w_s = mpmath.exp(-s * lw)
        total += w * w_s / (s - 1) + w_s / 2
        poch = s
        wp = w_s / w
        w2 = w * w
        term = 0
        for j in range(1, self.tail + 1):
            if j > 1:
                poch *= (s + 2 * j - 3) * (s + 2 * j - 2)
                wp /= w2
            term = to_mp(bernoulli(2 * j)) / math.factorial(2 * j) * poch * wp
            total += term
        err = abs(term)
        if err > self.tolerance * max(1, abs(total)):
            raise HurwitzConvergenceError(
                f"Euler-Maclaurin tail {mpmath.nstr(err, 5)} exceeds tolerance at s={s}, x={x}",
                {"s": str(s), "x": str(x), "tail_estimate": float(err), "terms": n, "tail": self.tail},
            )
        return total, err

    def taylor_at_zero(self, x, order: int) -> "TaylorData":
        """Taylor coefficients of ``s -> zeta_H(s, x)`` at 0 through ``s^order``."""
        if order > 6:
            raise ValueError("derivative order above 6 is not supported")
        if order < 0:
            raise ValueError("order must be nonnegative")
        full = _cauchy_taylor(self, Fraction(x) if not isinstance(x, float) else Fraction(x))
        return TaylorData(full.coefficients[: order + 1], full.error)


@dataclass(frozen=True)
class TaylorData:
    coefficients: tuple
    error: object


MAX_TAYLOR_ORDER = 6


@lru_cache(maxsize=4096)
def _cauchy_taylor(ev: HurwitzEvaluator, x: Fraction) -> TaylorData:
    with working_precision(ev.precision):
        xm = to_mp(x)
        n = 2 * ev.nodes
        r = to_mp(ev.radius)
        # real x: f(conj s) = conj f(s), so only the upper half circle is evaluated
        values = [None] * n
        for j in range(n // 2 + 1):
            s = r * mpmath.expjpi(mpmath.mpf(2 * j) / n)
            values[j], _ = ev._euler_maclaurin(s, xm)
        for j in range(n // 2 + 1, n):
            values[j] = mpmath.conj(values[n - j])

        def coeffs(step):
            m = n // step
            out = []
            for k in range(MAX_TAYLOR_ORDER + 1):
                acc = mpmath.fsum(
                    values[j * step] * mpmath.expjpi(-mpmath.mpf(2 * j * k) / m) for j in range(m)
                )
                out.append(mpmath.re(acc) / (m * r**k))
            return out

        fine = coeffs(1)
        coarse = coeffs(2)
        err = max(abs(a - b) for a, b in zip(fine, coarse))
        return TaylorData(tuple(fine), err)


DEFAULT_EVALUATOR = HurwitzEvaluator()


def default_evaluator(precision: int | None = None) -> HurwitzEvaluator:
    from .arith import default_precision

    bits = precision or default_precision()
    if bits == DEFAULT_EVALUATOR.precision:
        return DEFAULT_EVALUATOR
    return HurwitzEvaluator(precision=bits)


def hurwitz_zeta(s, x, evaluator: HurwitzEvaluator | None = None):
    return (evaluator or default_evaluator()).zeta(s, x)


def hurwitz_taylor_at_zero(x, order: int, evaluator: HurwitzEvaluator | None = None) -> list:
    return list((evaluator or default_evaluator()).taylor_at_zero(x, order).coefficients)


def riemann_taylor_at_zero(order: int, evaluator: HurwitzEvaluator | None = None) -> list:
    """Taylor coefficients of the Riemann zeta function at 0."""
    return hurwitz_taylor_at_zero(1, order, evaluator)
