"""Regularized products of prime-ideal norms for Q and quadratic fields.

The Dedekind zeta function of a quadratic field factors as ``zeta(s) L(s, chi_D)``,
so its Taylor data at 0 is a Leibniz product of data we already have.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .arith import is_squarefree, to_mp, working_precision
from .dirichlet import DirichletCharacter, kronecker_symbol
from .lfunctions import l_taylor_at_zero
from .report import RegProdReport
from .series import TruncatedSeries
from .special import HurwitzEvaluator, default_evaluator, riemann_taylor_at_zero

MAX_ORDER = 4


class InvariantViolation(ValueError):
    """Supplied field invariants disagree with the Dedekind zeta leading term."""


@dataclass(frozen=True)
class NumberFieldData:
    name: str
    r1: int
    r2: int
    w: int
    h: int
    regulator: object
    discriminant: int = 1

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0 or self.w < 1 or self.h < 1:
            raise ValueError("need r1, r2 >= 0 and w, h >= 1")
        if self.degree not in (1, 2):
            raise ValueError("only Q and quadratic fields are supported")
        if self.degree == 1 and self.discriminant != 1:
            raise ValueError("Q has discriminant 1")

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2

    @property
    def rank(self) -> int:
        """Order of vanishing of zeta_K at 0 plus one, i.e. ``r1 + r2``."""
        return self.r1 + self.r2

    def regulator_value(self):
        r = self.regulator
        return to_mp(r() if callable(r) else r)


PRESETS: dict[str, NumberFieldData] = {
    "Q": NumberFieldData("Q", 1, 0, 2, 1, 1, 1),
    "Q(i)": NumberFieldData("Q(i)", 0, 1, 4, 1, 1, -4),
    "Q(sqrt-3)": NumberFieldData("Q(sqrt-3)", 0, 1, 6, 1, 1, -3),
    "Q(sqrt5)": NumberFieldData("Q(sqrt5)", 2, 0, 2, 1, lambda: mpmath.log(mpmath.phi), 5),
}


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(abs(d))
    if d % 4 == 0:
        k = d // 4
        return k % 4 in (2, 3) and is_squarefree(abs(k))
    return False


def kronecker_character(d: int) -> DirichletCharacter:
    """The real character ``n -> (d/n)`` modulo ``|d|`` for a fundamental discriminant ``d``."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    m = abs(d)
    chi = DirichletCharacter.from_angles(
        m, lambda g: Fraction(0) if kronecker_symbol(d, g) == 1 else Fraction(1, 2)
    )
    assert chi.parity == (1 if d > 0 else -1)
    return chi


def dedekind_zeta_taylor0(field: NumberFieldData, order: int, evaluator: HurwitzEvaluator | None = None) -> list:
    """Taylor coefficients of ``zeta_K`` at 0 through ``s^order``."""
    if order > MAX_ORDER:
        raise ValueError(f"order above {MAX_ORDER} is not supported")
    ev = evaluator or default_evaluator()
    with working_precision(ev.precision):
        zeta = TruncatedSeries.from_coeffs(riemann_taylor_at_zero(order, ev), 0, order)
        if field.degree == 1:
            return list(zeta.coeffs)
        chi = kronecker_character(field.discriminant)
        lser = l_taylor_at_zero(chi, order, ev).taylor
        return [mpmath.re(c) for c in (zeta * lser).coeffs]


@dataclass(frozen=True)
class LeadingCheck:
    expected: object
    computed: object
    relative_error: object


def leading_check(field: NumberFieldData, tol: float = 1e-8, evaluator: HurwitzEvaluator | None = None) -> LeadingCheck:
    """Compare ``-h R / w`` with the Taylor coefficient of ``s^{r1+r2-1}``."""
    ev = evaluator or default_evaluator()
    with working_precision(ev.precision):
        n = field.rank
        coeffs = dedekind_zeta_taylor0(field, n - 1, ev)
        expected = -field.h * field.regulator_value() / field.w
        computed = coeffs[n - 1]
        rel = abs(computed - expected) / abs(expected)
        if rel > tol:
            raise InvariantViolation(
                f"{field.name}: -hR/w = {mpmath.nstr(expected, 12)} but zeta_K leading "
                f"coefficient is {mpmath.nstr(computed, 12)}"
            )
        return LeadingCheck(expected, computed, rel)


def regprod_number_field(field: NumberFieldData, evaluator: HurwitzEvaluator | None = None, tol: float = 1e-8) -> RegProdReport:
    """Exponent ``-(2 w / ((r1+r2) h R)) zeta_K^{(r1+r2)}(0)``."""
    ev = evaluator or default_evaluator()
    with working_precision(ev.precision):
        check = leading_check(field, tol, ev)
        n = field.rank
        coeffs = dedekind_zeta_taylor0(field, n, ev)
        deriv = math.factorial(n) * coeffs[n]
        exponent = -2 * field.w * deriv / (n * field.h * field.regulator_value())
        return RegProdReport(
            command="number-field",
            inputs={
                "field": field.name,
                "r1": field.r1,
                "r2": field.r2,
                "w": field.w,
                "h": field.h,
                "R": field.regulator_value(),
                "D": field.discriminant,
            },
            exponent=exponent,
            breakdown={"zeta_K_derivative": deriv, "taylor": coeffs},
            diagnostics={
                "leading_expected": check.expected,
                "leading_computed": check.computed,
                "residuals": {"leading_relative_error": float(check.relative_error)},
            },
            precision_bits=ev.precision,
        )
