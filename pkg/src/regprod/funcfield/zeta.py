"""Zeta numerators of curves over finite fields and their regularized products.

``Z(X, t) = exp(sum N_m t^m / m) = L(t) / ((1 - t)(1 - q t))`` with ``L`` an
integer polynomial of degree ``2g``.  The product of closed-point norms has the
exact exponent ``1 - 2 (L'(1)/L(1) + q/(1 - q))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath
import numpy as np
from sympy import primitive_root

from ..arith import is_prime, working_precision
from ..report import RegProdReport
from ..series import TruncatedSeries


@dataclass(frozen=True)
class ZetaNumerator:
    coeffs: tuple[int, ...]
    q: int
    g: int
    weil_status: str = "unchecked"
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))
        if self.coeffs[0] != 1:
            raise ValueError("L(0) must be 1")
        if self.q < 2:
            raise ValueError("q must be at least 2")
        if len(self.coeffs) - 1 > 2 * self.g:
            raise ValueError(f"degree {len(self.coeffs) - 1} exceeds 2g = {2 * self.g}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def at_one(self) -> int:
        """``L(1)``, the class number."""
        return sum(self.coeffs)

    def derivative_at_one(self) -> int:
        return sum(i * c for i, c in enumerate(self.coeffs))

    def functional_equation_holds(self) -> bool:
        """``a_{2g-i} = q^{g-i} a_i`` for all ``i``."""
        a = list(self.coeffs) + [0] * (2 * self.g + 1 - len(self.coeffs))
        g, q = self.g, self.q
        return all(a[2 * g - i] == q ** (g - i) * a[i] for i in range(g + 1))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else "t" if i == 1 else f"t^{i}"
            if i and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def _log_z(coeffs, q: int, order: int) -> TruncatedSeries:
    """``log(L(t) / ((1 - t)(1 - q t)))`` to ``t^order``, exact."""
    L = TruncatedSeries.from_coeffs([Fraction(c) for c in coeffs], 0, order)
    den = TruncatedSeries.from_coeffs([Fraction(1), Fraction(-1 - q), Fraction(q)], 0, order)
    return (L * den.inverse()).log()


def numerator_from_counts(counts, q: int, g: int) -> ZetaNumerator:
    """Recover ``L(t)`` from ``N_1 .. N_{2g}``."""
    counts = list(counts)
    if len(counts) != 2 * g:
        raise ValueError(f"need exactly {2 * g} counts, got {len(counts)}")
    if g == 0:
        return ZetaNumerator((1,), q, 0, details={"functional_equation": True})
    logz = TruncatedSeries.from_coeffs([Fraction(0)] + [Fraction(n, m) for m, n in enumerate(counts, 1)], 0, 2 * g)
    den = TruncatedSeries.from_coeffs([Fraction(1), Fraction(-1 - q), Fraction(q)], 0, 2 * g)
    L = logz.exp() * den
    coeffs = []
    for k in range(2 * g + 1):
        c = L[k]
        if Fraction(c).denominator != 1:
            raise ValueError(f"coefficient of t^{k} is {c}, not an integer: counts are inconsistent")
        coeffs.append(int(c))
    num = ZetaNumerator(tuple(coeffs), q, g)
    return replace(num, details={"functional_equation": num.functional_equation_holds()})


def predict_counts(num: ZetaNumerator, upto: int) -> list[int]:
    """``N_1 .. N_upto`` implied by the numerator."""
    logz = _log_z(num.coeffs, num.q, upto)
    return [int(m * logz[m]) for m in range(1, upto + 1)]


def _strip(p: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    """Quotient and remainder of coefficient lists (highest degree first)."""
    a, out = list(a), []
    while len(a) >= len(b):
        f = a[0] / b[0]
        out.append(f)
        a = [x - f * y for x, y in zip(a, b + [0] * (len(a) - len(b)))][1:]
    return out or [Fraction(0)], _strip(a)


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd."""
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return [c / a[0] for c in a]


def _poly_deriv(p: list[Fraction]) -> list[Fraction]:
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [Fraction(0)]


def _squarefree_factorization(p: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: ``p = lc * prod f_i^i`` with squarefree, coprime ``f_i``."""
    dp = _poly_deriv(p)
    b = _poly_gcd(p, dp)
    c = _poly_divmod(p, b)[0]
    d = [x - y for x, y in _aligned(_poly_divmod(dp, b)[0], _poly_deriv(c))]
    out, i = [], 1
    while len(c) > 1:
        a = _poly_gcd(c, d)
        if len(a) > 1:
            out.append((a, i))
        c = _poly_divmod(c, a)[0]
        d = [x - y for x, y in _aligned(_poly_divmod(d, a)[0], _poly_deriv(c))]
        i += 1
    return out


def _aligned(a, b):
    n = max(len(a), len(b))
    return zip([Fraction(0)] * (n - len(a)) + list(a), [Fraction(0)] * (n - len(b)) + list(b))


def _polished_roots(poly: list[Fraction], bits: int) -> list:
    guesses = np.roots([float(c) for c in poly])
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in poly]
    dcoeffs = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]
    out = []
    for z in guesses:
        z = mpmath.mpc(complex(z))
        for _ in range(60):
            step = mpmath.polyval(coeffs, z) / mpmath.polyval(dcoeffs, z)
            z -= step
            if abs(step) < mpmath.mpf(2) ** (-bits + 8):
                break
        out.append(z)
    return out


def inverse_roots(num: ZetaNumerator, bits: int = 128) -> list:
    """Inverse roots of ``L`` with multiplicity: roots of ``t^d L(1/t)``, polished in mpmath.

    Repeated roots are split off exactly first so Newton polishing always
    runs on a squarefree polynomial.
    """
    if num.degree == 0:
        return []
    rev = [Fraction(c) for c in num.coeffs]  # t^d L(1/t), highest degree first
    with working_precision(bits):
        roots = []
        for factor, mult in _squarefree_factorization(rev):
            for z in _polished_roots(factor, bits):
                roots.extend([z] * mult)
        return roots


def weil_validate(num: ZetaNumerator, tol: float = 1e-9) -> ZetaNumerator:
    """Check ``|pi_i| = sqrt(q)``, degree ``2g`` and the functional equation."""
    pis = inverse_roots(num)
    with working_precision(128):
        root_q = mpmath.sqrt(num.q)
        deviations = [abs(abs(z) - root_q) for z in pis]
        worst = max(deviations, default=mpmath.mpf(0))
    fe = num.functional_equation_holds()
    ok = fe and num.degree == 2 * num.g and worst <= tol
    details = {
        "magnitudes": [float(abs(z)) for z in pis],
        "max_deviation": float(worst),
        "functional_equation": fe,
        "degree": num.degree,
    }
    return replace(num, weil_status="validated" if ok else "violated", details=details)


def regprod_funcfield_exponent(num: ZetaNumerator) -> Fraction:
    h = num.at_one()
    if h == 0:
        raise ZeroDivisionError("L(1) = 0")
    q = num.q
    return 1 - 2 * (Fraction(num.derivative_at_one(), h) + Fraction(q, 1 - q))


def regprod_funcfield(num: ZetaNumerator, command: str = "curve", inputs: dict | None = None) -> RegProdReport:
    """Exact exponent ``1 - 2 (L'(1)/L(1) + q/(1 - q))``."""
    exponent = regprod_funcfield_exponent(num)
    return RegProdReport(
        command=command,
        inputs=inputs or {"q": num.q, "g": num.g},
        exponent=exponent,
        exact=exponent,
        breakdown={"L": str(num), "L(1)": num.at_one(), "L'(1)": num.derivative_at_one()},
        diagnostics={"weil": num.weil_status, **({"weil_details": num.details} if num.details else {})},
    )


def regprod_funcfield_via_roots(pis, g: int, q: int, h=None):
    """``2 (1/2 + sum 1/(1 - pi_i) - 2g + q/(q - 1))`` from the inverse roots."""
    pis = list(pis)
    if len(pis) != 2 * g:
        raise ValueError(f"need {2 * g} inverse roots, got {len(pis)}")
    if any(z == 1 for z in pis):
        raise ZeroDivisionError("an inverse root equals 1")
    total = mpmath.fsum(1 / (1 - mpmath.mpc(z)) for z in pis)
    if h is not None:
        prod = mpmath.fprod(1 - mpmath.mpc(z) for z in pis)
        if abs(prod - h) > 1e-8 * max(1, abs(h)):
            raise ValueError(f"prod(1 - pi_i) = {mpmath.nstr(prod, 10)} does not match h = {h}")
    value = 2 * (mpmath.mpf(1) / 2 + total - 2 * g + mpmath.mpf(q) / (q - 1))
    return mpmath.re(value)


def jacobi_fermat_numerator(ell: int, p: int) -> ZetaNumerator:
    """Numerator of ``x^ell + y^ell + z^ell = 0`` over GF(p) from Jacobi sums.

    ``L(t) = prod (1 - alpha_{a,b} t)`` over ``a, b, a+b`` nonzero mod ``ell``,
    ``alpha_{a,b} = -chi^{a+b}(-1) J(chi^a, chi^b)`` for a character ``chi`` of order ``ell``;
    the minus sign is what makes ``N_1 = p + 1 - sum alpha`` match direct counts.
    """
    if not (is_prime(ell) and ell > 2 and is_prime(p)):
        raise ValueError("need an odd prime ell and a prime p")
    if (p - 1) % ell:
        raise ValueError(f"p = {p} is not 1 mod {ell}")
    g = primitive_root(p)
    dlog = {}
    v = 1
    for k in range(p - 1):
        dlog[v] = k
        v = v * g % p
    with working_precision(128):
        zeta = [mpmath.expjpi(mpmath.mpf(2 * j) / ell) for j in range(ell)]

        def chi_pow(x, a):
            return 0 if x % p == 0 else zeta[(a * dlog[x % p]) % ell]

        alphas = []
        for a in range(1, ell):
            for b in range(1, ell):
                if (a + b) % ell == 0:
                    continue
                J = mpmath.fsum(chi_pow(x, a) * chi_pow(1 - x, b) for x in range(2, p))
                alphas.append(-chi_pow(-1, a + b) * J)
        poly = [mpmath.mpc(1)]
        for al in alphas:
            poly = [c - al * (poly[i - 1] if i else 0) for i, c in enumerate(poly + [0])]
        coeffs = [int(mpmath.nint(mpmath.re(c))) for c in poly]
        residual = max(abs(c - k) for c, k in zip(poly, coeffs))
        if residual > 1e-6:
            raise ArithmeticError(f"Jacobi-sum numerator not integral (residual {float(residual):.3g})")
        magnitudes = [float(abs(al)) for al in alphas]
    genus = (ell - 1) * (ell - 2) // 2
    return ZetaNumerator(tuple(coeffs), p, genus,
                         details={"rounding_residual": float(residual), "alpha_magnitudes": magnitudes})


def compare_numerators(counted: ZetaNumerator, reference: ZetaNumerator) -> dict:
    """Flag disagreement between a counted numerator and a supplied one."""
    return {
        "counted": str(counted),
        "reference": str(reference),
        "match": counted.coeffs == reference.coeffs and counted.q == reference.q,
        "counted_exponent": regprod_funcfield_exponent(counted),
        "reference_exponent": regprod_funcfield_exponent(reference),
        "reference_predicted_counts": predict_counts(reference, 4),
        "counted_predicted_counts": predict_counts(counted, 4),
    }
