"""Regularized product of the primes in an arithmetic progression.

With ``P(s) = sum_{p = a (m)} p^{-s} = sum_n mu(n)/n * (1/phi(m)) sum_chi conj(chi(a)) log L(ns, chi^n)``
the regularized product is ``exp(-sum_{r=1}^{phi(m)} (Q_r^+ + Q_r^- + Q_r^0) R_{phi(m), r})``:
the Q terms collect residues of ``L'/(sL)`` over characters, grouped by the
type of ``chi^r``, and ``R_{N,r}`` is the constant term at ``t = 0`` of
``sum_{n = r (N)} mu(n) n^{-t}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .arith import (
    default_precision,
    euler_phi,
    is_squarefree,
    mobius,
    mobius_sieve,
    prime_factors,
    prime_sieve,
    to_mp,
    working_precision,
)
from .dirichlet import DirichletCharacter, enumerate_characters
from .lfunctions import inverse_l_laurent, l_taylor_at_zero, logderiv_residue, order_of_vanishing
from .numberfield import PRESETS, regprod_number_field
from .report import RegProdReport
from .series import TruncatedSeries
from .special import HurwitzEvaluator, default_evaluator, generalized_bernoulli_series, log_gamma

IMAG_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ProgressionTarget:
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if gcd(self.residue, self.modulus) != 1:
            raise ValueError(f"gcd({self.residue}, {self.modulus}) != 1")
        object.__setattr__(self, "residue", self.residue % self.modulus)


@dataclass(frozen=True)
class QTerms:
    q_plus: object
    q_minus: object
    q_zero: object
    imag_residual: float = 0.0

    @property
    def total(self):
        return self.q_plus + self.q_minus + self.q_zero


def _conjugate_pairs(chars):
    """Yield ``(chi, multiplicity)`` with each conjugate pair represented once, weight 2."""
    seen = set()
    for chi in chars:
        if chi in seen:
            continue
        bar = chi.conjugate()
        seen.add(chi)
        seen.add(bar)
        yield chi, (1 if bar == chi else 2)


def _real_part(z, mult: int):
    """Contribution of a character (mult 1) or of a conjugate pair (mult 2)."""
    if mult == 2:
        return 2 * mpmath.re(z), 0.0
    return mpmath.re(z), float(abs(mpmath.im(z)))


def principal_q_constant(m: int):
    """``Res L'(s, chi_0)/(s L(s, chi_0)) = log(2 pi / sqrt(prod_{p | m} p))``."""
    rad = 1
    for p in prime_factors(m):
        rad *= p
    return mpmath.log(2 * mpmath.pi) - mpmath.log(rad) / 2


def q_terms(n: int, target: ProgressionTarget, evaluator: HurwitzEvaluator | None = None) -> QTerms:
    if n < 1:
        raise ValueError("n must be positive")
    ev = evaluator or default_evaluator()
    m, a = target.modulus, target.residue
    with working_precision(ev.precision):
        phi = euler_phi(m)
        plus = minus = zero = mpmath.mpf(0)
        imag = 0.0
        for chi, mult in _conjugate_pairs(enumerate_characters(m)):
            psi = chi**n
            weight = mpmath.conj(to_mp(chi(a))) / phi
            if psi.is_principal:
                term, im = _real_part(weight * principal_q_constant(m), mult)
                zero += term
            else:
                term, im = _real_part(weight * logderiv_residue(psi, ev), mult)
                if psi.is_even:
                    plus += term
                else:
                    minus += term
            imag = max(imag, im)
        if imag > IMAG_TOLERANCE:
            raise ArithmeticError(f"Q_{n} for {m}:{a} has imaginary residue {imag:.3g}")
        return QTerms(plus, minus, zero, imag)


def f_eta_series(eta: DirichletCharacter, d: int, upto: int, method: str = "direct") -> TruncatedSeries:
    """Laurent series of ``F(t) = d^{-t} / prod_{p | d} (1 - eta(p) p^{-t})`` through ``t^upto``.

    ``method="bernoulli"`` goes through the generalized Bernoulli generating
    function with ``x = -log d``, ``alpha_j = eta(p_j)``, ``a_j = -log p_j``;
    the two agree as ``F(t) = (-1)^omega(d) t^{-omega(d)} G(t)``.
    """
    primes = prime_factors(d)
    lams = [mpmath.log(p) for p in primes]
    alphas = [to_mp(eta(p)) if eta(p) not in (0, 1) else eta(p) for p in primes]
    poles = sum(1 for al in alphas if al == 1)
    if method == "direct":
        work = upto + 2 * poles
        num = TruncatedSeries.exp_linear(-mpmath.log(d), work)
        den = TruncatedSeries.one(work)
        for al, lam in zip(alphas, lams):
            den = den * (1 - TruncatedSeries.exp_linear(-lam, work) * al)
        if poles:
            # the lowest `poles` coefficients of den vanish identically
            den = TruncatedSeries(poles, den.coeffs[poles:], work)
        return (num * den.inverse()).truncate(upto)
    if method == "bernoulli":
        ell = len(primes)
        series = generalized_bernoulli_series(-mpmath.log(d), alphas, [-lam for lam in lams], upto + ell)
        shifted = TruncatedSeries(series.low - ell, series.coeffs, series.order - ell)
        return (shifted * (-1) ** ell).truncate(upto)
    raise ValueError(f"unknown method {method!r}")


def r_series(N: int, r: int, upto: int = 0, evaluator: HurwitzEvaluator | None = None, method: str = "direct") -> TruncatedSeries:
    """Laurent data at ``t = 0`` of ``sum_{n = r (N)} mu(n) n^{-t}`` through ``t^upto``.

    With ``d = gcd(N, r)`` this is
    ``mu(d)/phi(N/d) sum_{eta mod N/d} conj(eta(r/d)) F_eta(t) / L(t, eta)``.
    """
    if not 1 <= r <= N:
        raise ValueError("need 1 <= r <= N")
    ev = evaluator or default_evaluator()
    d = gcd(N, r)
    with working_precision(ev.precision):
        mu = mobius(d)
        if mu == 0:
            return TruncatedSeries.from_coeffs([mpmath.mpf(0)], 0, upto)
        k = N // d
        total = None
        imag = 0.0
        for eta, mult in _conjugate_pairs(enumerate_characters(k)):
            f = f_eta_series(eta, d, upto + order_of_vanishing(eta), method)
            fpoles = -f.low if f.low < 0 else 0
            inv = inverse_l_laurent(eta, upto + fpoles, ev)
            term = (f * inv).truncate(upto) * mpmath.conj(to_mp(eta(r // d)))
            if mult == 2:
                term = term.map(lambda c: 2 * mpmath.re(c))
            else:
                imag = max(imag, max((float(abs(mpmath.im(to_mp(c)))) for c in term.coeffs), default=0.0))
                term = term.map(lambda c: mpmath.re(to_mp(c)))
            total = term if total is None else total + term
        if imag > IMAG_TOLERANCE:
            raise ArithmeticError(f"R_{{{N},{r}}} has imaginary residue {imag:.3g}")
        return total * (mpmath.mpf(mu) / euler_phi(k))


def r_coefficient(N: int, r: int, evaluator: HurwitzEvaluator | None = None, method: str = "direct"):
    """``R_{N,r}``: constant term at ``t = 0`` of ``sum_{n = r (N)} mu(n) n^{-t}``."""
    if not 1 <= r <= N:
        raise ValueError("need 1 <= r <= N")
    if not is_squarefree(gcd(N, r)):
        return mpmath.mpf(0)
    return r_series(N, r, 0, evaluator, method)[0]


def r_coefficient_coprime(N: int, r: int, evaluator: HurwitzEvaluator | None = None):
    """Closed form for ``gcd(N, r) = 1`` from the first Laurent coefficients of ``1/L``.

    Odd characters contribute ``1/L(0)``, even non-principal ones
    ``-L''(0) / (2 L'(0)^2)``, and the principal character the residue
    ``b_omega(N)`` (or ``1/zeta(0) = -2`` when ``N = 1``).
    """
    if gcd(N, r) != 1:
        raise ValueError("r must be coprime to N")
    ev = evaluator or default_evaluator()
    with working_precision(ev.precision):
        acc = mpmath.mpf(0)
        for eta in enumerate_characters(N):
            w = mpmath.conj(to_mp(eta(r)))
            ord0 = order_of_vanishing(eta)
            if eta.is_principal:
                if N == 1:
                    acc += w * 1 / to_mp(l_taylor_at_zero(eta, 0, ev).taylor[0])
                else:
                    acc += w * inverse_l_laurent(eta, 0, ev)[0]
                continue
            tay = l_taylor_at_zero(eta, 2, ev).taylor
            if ord0 == 0:
                acc += w / tay[0]
            elif ord0 == 1:
                d1, d2 = tay[1], 2 * tay[2]
                acc += w * (-d2 / (2 * d1**2))
            else:
                acc += w * inverse_l_laurent(eta, 0, ev)[0]
        return mpmath.re(acc) / euler_phi(N)


def regprod_all_primes(evaluator: HurwitzEvaluator | None = None) -> RegProdReport:
    """All rational primes: the number-field formula for ``K = Q``."""
    report = regprod_number_field(PRESETS["Q"], evaluator)
    report.command = "primes"
    return report


def regprod_progression(target: ProgressionTarget, evaluator: HurwitzEvaluator | None = None) -> RegProdReport:
    m, a = target.modulus, target.residue
    if m == 1:
        report = regprod_all_primes(evaluator)
        report.command = "progression"
        report.inputs = {"m": 1, "a": 0, **report.inputs}
        return report
    ev = evaluator or default_evaluator()
    with working_precision(ev.precision):
        N = euler_phi(m)
        exponent = mpmath.mpf(0)
        breakdown = {}
        imag = 0.0
        for r in range(1, N + 1):
            R = r_coefficient(N, r, ev)
            if R == 0:
                breakdown[r] = {"R": R}
                continue
            q = q_terms(r, target, ev)
            imag = max(imag, q.imag_residual)
            exponent -= q.total * R
            breakdown[r] = {"Q+": q.q_plus, "Q-": q.q_minus, "Q0": q.q_zero, "R": R}
        return RegProdReport(
            command="progression",
            inputs={"m": m, "a": a},
            exponent=exponent,
            breakdown=breakdown,
            diagnostics={"residuals": {"imaginary": imag}},
            precision_bits=ev.precision,
        )


def gauss_constant():
    """``G = Gamma(1/4)^2 / (2 sqrt(2 pi^3))``."""
    return mpmath.exp(2 * log_gamma(Fraction(1, 4))) / (2 * mpmath.sqrt(2 * mpmath.pi**3))


def m4_closed_form(a: int, prec: int | None = None):
    """Closed-form exponent of the product over ``p = a (mod 4)``.

    Uses ``L'(0, chi_4) = log(sqrt(pi) G)`` and ``R_{2,1} = 2 log(2 pi)/log 2 - 1``.
    """
    if a % 4 not in (1, 3):
        raise ValueError("a must be 1 or 3 mod 4")
    with working_precision(prec or default_precision()):
        return _m4_closed_form(a % 4)


def _m4_closed_form(a: int):
    pi = mpmath.pi
    lg = mpmath.log(2 * pi) / mpmath.log(2)
    g_term = mpmath.log(mpmath.sqrt(pi) * gauss_constant()) * (2 * lg - 1)
    c = mpmath.log(2 * pi / mpmath.sqrt(2))
    if a == 1:
        return -g_term + c * (mpmath.mpf(3) / 2 + lg)
    return g_term + c * (mpmath.mpf(1) / 2 - lg)


@dataclass(frozen=True)
class SeriesCheck:
    direct_sum: object
    moebius_log_sum: object
    difference: object


def _l_value(psi: DirichletCharacter, s, ev: HurwitzEvaluator):
    m = psi.modulus
    if m == 1:
        return ev.zeta(s, 1)
    acc = mpmath.mpc(0)
    for b in range(1, m + 1):
        v = psi(b)
        if v != 0:
            acc += to_mp(v) * ev.zeta(s, Fraction(b, m))
    return acc * mpmath.power(m, -s)


def prime_series_check(s, target: ProgressionTarget, prime_bound: int = 10**6, terms: int = 25,
                       evaluator: HurwitzEvaluator | None = None) -> SeriesCheck:
    """Compare a direct prime sum with its Möbius-inverted logarithmic form."""
    if s < 1.5:
        raise ValueError("need s >= 1.5")
    if prime_bound > 10**7:
        raise ValueError("prime_bound above 1e7")
    ev = evaluator or default_evaluator()
    m, a = target.modulus, target.residue
    with working_precision(ev.precision):
        s = to_mp(s)
        primes = prime_sieve(prime_bound)
        primes = primes[primes % m == a] if m > 1 else primes
        direct = mpmath.fsum(mpmath.power(int(p), -s) for p in primes)
        phi = euler_phi(m)
        chars = enumerate_characters(m)
        total = mpmath.mpf(0)
        for n in range(1, terms + 1):
            mu = mobius(n)
            if mu == 0:
                continue
            inner = mpmath.mpc(0)
            for chi, mult in _conjugate_pairs(chars):
                z = mpmath.conj(to_mp(chi(a))) * mpmath.log(_l_value(chi**n, n * s, ev))
                inner += 2 * mpmath.re(z) if mult == 2 else z
            total += mu * mpmath.re(inner) / (n * phi)
        return SeriesCheck(direct, total, abs(direct - total))


def smoothed_r_estimate(N: int, r: int, X: float, evaluator: HurwitzEvaluator | None = None):
    """Estimate ``R_{N,r}`` from ``S(X) = sum_{n = r (N)} mu(n) e^{-n/X}``.

    Mellin inversion gives ``S(X) = R + c_{-1} (log X - gamma) + O(1/X)`` when the
    series has at most a simple pole; ``c_{-1}`` is taken from the Laurent data.
    """
    ev = evaluator or default_evaluator()
    with working_precision(ev.precision):
        series = r_series(N, r, 0, ev)
        if series.low < -1 and any(series[k] != 0 for k in range(series.low, -1)):
            raise ValueError("smoothing estimate needs at most a simple pole")
        cutoff = int(40 * X) + N
        mu = mobius_sieve(cutoff)
        n = range(r, cutoff + 1, N)
        s = mpmath.fsum(int(mu[k]) * mpmath.exp(-mpmath.mpf(k) / X) for k in n if mu[k])
        return s - series[-1] * (mpmath.log(X) - mpmath.euler)
