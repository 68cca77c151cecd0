"""Truncated power and Laurent series over exact rationals or mpmath floats.

A series stores a dense block of coefficients for exponents
``low, low+1, ..., order``; everything above ``order`` is unknown (the
``O(t^(order+1))`` remainder).  Operations propagate the truncation order so a
coefficient that was never resolved cannot be read back by accident.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .arith import to_mp


class TruncationError(LookupError):
    """A coefficient beyond the known truncation order was requested."""


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction))


def _is_zero(c) -> bool:
    return c == 0


@dataclass(frozen=True)
class TruncatedSeries:
    low: int
    coeffs: tuple
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order - self.low + 1:
            raise ValueError(
                f"need {self.order - self.low + 1} coefficients for exponents "
                f"{self.low}..{self.order}, got {len(self.coeffs)}"
            )

    # -- construction -------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, low: int = 0, order: int | None = None) -> "TruncatedSeries":
        coeffs = list(coeffs)
        if order is None:
            order = low + len(coeffs) - 1
        width = order - low + 1
        if width < 0:
            raise ValueError("order below lowest exponent")
        if len(coeffs) < width:
            coeffs += [0] * (width - len(coeffs))
        return cls(low, tuple(coeffs[:width]), order)

    @classmethod
    def from_dict(cls, terms: Mapping[int, object], order: int | None = None) -> "TruncatedSeries":
        if not terms:
            if order is None:
                raise ValueError("empty series needs an explicit order")
            return cls(order + 1, (), order)
        low = min(terms)
        if order is None:
            order = max(terms)
        return cls.from_coeffs((terms.get(k, 0) for k in range(low, order + 1)), low, order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([1], 0, order)

    @classmethod
    def exp_linear(cls, alpha, order: int) -> "TruncatedSeries":
        """Taylor series of ``exp(alpha * t)``."""
        coeffs = [Fraction(1) if _is_exact(alpha) else to_mp(1)]
        for k in range(1, order + 1):
            coeffs.append(coeffs[-1] * alpha / k)
        return cls.from_coeffs(coeffs, 0, order)

    # -- access -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs)

    def __getitem__(self, k: int):
        if k > self.order:
            raise TruncationError(f"coefficient t^{k} unknown beyond order {self.order}")
        if k < self.low:
            return 0
        return self.coeffs[k - self.low]

    def coefficients(self, start: int, stop: int) -> list:
        return [self[k] for k in range(start, stop + 1)]

    def valuation(self) -> int | None:
        """Exponent of the first stored nonzero coefficient (None if all vanish)."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return self.low + i
        return None

    def normalized(self) -> "TruncatedSeries":
        """Drop exactly-zero leading coefficients."""
        v = self.valuation()
        if v is None or v == self.low:
            return self
        return TruncatedSeries(v, self.coeffs[v - self.low :], self.order)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        if order < self.low:
            return TruncatedSeries(order + 1, (), order)
        return TruncatedSeries(self.low, self.coeffs[: order - self.low + 1], order)

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries(self.low, tuple(fn(c) for c in self.coeffs), self.order)

    def to_mp(self) -> "TruncatedSeries":
        return self.map(to_mp)

    def __call__(self, t):
        """Evaluate the stored polynomial part at ``t``."""
        return sum((c * t ** (self.low + i) for i, c in enumerate(self.coeffs)), 0)

    # -- ring operations ------------------------------------------------

    def __neg__(self):
        return self.map(lambda c: -c)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.from_coeffs([other], 0, self.order)
        order = min(self.order, other.order)
        low = min(self.low, other.low)
        coeffs = tuple(self._get(k) + other._get(k) for k in range(low, order + 1))
        return TruncatedSeries(low, coeffs, order)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _get(self, k):
        if k < self.low or k > self.order:
            return 0
        return self.coeffs[k - self.low]

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.map(lambda c: c * other)
        low = self.low + other.low
        order = min(self.order + other.low, other.order + self.low)
        out = [0] * (order - low + 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                out[k] = out[k] + a * b
        return TruncatedSeries(low, tuple(out), order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self.map(lambda c: c / other)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.from_coeffs([1], 0, self.order - self.low)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the stored coefficient at ``low`` must be nonzero."""
        if not self.coeffs or _is_zero(self.coeffs[0]):
            raise ZeroDivisionError(
                f"inverse needs a nonzero coefficient at the declared lowest exponent {self.low}"
            )
        a = self.coeffs
        n = len(a)
        inv0 = Fraction(1, 1) / a[0] if _is_exact(a[0]) else 1 / a[0]
        b = [inv0]
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                acc = acc + a[j] * b[k - j]
            b.append(-acc * inv0)
        low = -self.low
        return TruncatedSeries(low, tuple(b), low + n - 1)

    # -- transcendental operations -----------------------------------------

    def derivative(self) -> "TruncatedSeries":
        coeffs = tuple((self.low + i) * c for i, c in enumerate(self.coeffs))
        if self.low == 0:
            return TruncatedSeries(0, coeffs[1:], self.order - 1)
        return TruncatedSeries(self.low - 1, coeffs, self.order - 1)

    def exp(self) -> "TruncatedSeries":
        if self.low < 0 and any(not _is_zero(c) for c in self.coeffs[: -self.low]):
            raise ValueError("exp of a series with negative powers")
        a = [self._get(k) for k in range(0, self.order + 1)]
        c0 = a[0]
        if not _is_zero(c0) and _is_exact(c0):
            raise ValueError("exp of an exact series needs a zero constant term")
        scale = mpmath.exp(c0) if not _is_zero(c0) else 1
        b = [Fraction(1) if self.is_exact else to_mp(1)]
        for n in range(1, self.order + 1):
            acc = 0
            for k in range(1, n + 1):
                acc = acc + k * a[k] * b[n - k]
            b.append(acc / n)
        return TruncatedSeries(0, tuple(c * scale for c in b), self.order)

    def log(self) -> "TruncatedSeries":
        if self.low > 0 or (self.low == 0 and (not self.coeffs or _is_zero(self.coeffs[0]))):
            raise ValueError("log of a series with zero constant term")
        if self.low < 0 and any(not _is_zero(c) for c in self.coeffs[: -self.low]):
            raise ValueError("log of a series with negative powers")
        a = [self._get(k) for k in range(0, self.order + 1)]
        a0 = a[0]
        if _is_exact(a0):
            if a0 != 1:
                raise ValueError("log of an exact series needs constant term 1")
            const = 0
        else:
            const = mpmath.log(a0)
        b = [const]
        for n in range(1, self.order + 1):
            acc = n * a[n]
            # b[k] holds k * (coefficient k) until the final rescale
            for k in range(1, n):
                acc = acc - b[k] * a[n - k]
            b.append(acc / a0)
        b = [b[0]] + [b[n] / n for n in range(1, len(b))]
        return TruncatedSeries(0, tuple(b), self.order)

    def scale_substitute(self, alpha, k: int = 1) -> "TruncatedSeries":
        """Substitute ``t -> alpha * t**k`` (``k >= 1``)."""
        if k < 1:
            raise ValueError("substitution exponent must be positive")
        low = self.low * k
        order = k * (self.order + 1) - 1
        out = [0] * (order - low + 1)
        for i, c in enumerate(self.coeffs):
            e = self.low + i
            out[e * k - low] = c * alpha**e
        return TruncatedSeries(low, tuple(out), order)


@dataclass(frozen=True)
class LaurentData:
    constant_term: object
    residue_of_f_over_t: object


def laurent_constant_and_residue(f: TruncatedSeries) -> LaurentData:
    """Constant term of ``f``, which is also ``Res_{t=0} f(t)/t``."""
    if f.order < 0:
        raise TruncationError("series is not resolved up to exponent 0")
    c = f[0]
    return LaurentData(constant_term=c, residue_of_f_over_t=c)


def series_algebra(op: str, *operands, **kwargs) -> TruncatedSeries:
    """Dispatch helper mirroring the operation table of the series layer."""
    if op == "mul":
        result = operands[0]
        for other in operands[1:]:
            result = result * other
        return result
    if op == "inverse":
        return operands[0].inverse()
    if op == "exp":
        return operands[0].exp()
    if op == "log":
        return operands[0].log()
    if op == "derivative":
        return operands[0].derivative()
    if op == "scale_substitute":
        return operands[0].scale_substitute(kwargs.get("alpha", 1), kwargs.get("k", 1))
    raise ValueError(f"unknown series operation {op!r}")
