"""Curve specifications, a small polynomial parser, and brute-force point counts."""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from .fields import FiniteField, field

ENUMERATION_BUDGET = 10**9
_CHUNK = 1 << 20


class CurveParseError(ValueError):
    pass


class BudgetExceeded(ValueError):
    pass


Monomial = tuple[int, ...]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\^)|(\*)|([+-])|(.))")


def parse_polynomial(source: str, p: int, variables: str = "xyz") -> dict[Monomial, int]:
    """Parse ``term (('+'|'-') term)*`` with integer coefficients reduced mod ``p``.

    A term is a product of integers and ``var^k`` factors joined by ``*``; an
    optional ``lhs = rhs`` form is read as ``lhs - rhs``.
    """
    if source.count("=") > 1:
        raise CurveParseError("at most one '=' allowed")
    if "=" in source:
        lhs, rhs = source.split("=")
        a = parse_polynomial(lhs, p, variables)
        b = parse_polynomial(rhs, p, variables)
        for mono, c in b.items():
            a[mono] = (a.get(mono, 0) - c) % p
        return {k: v for k, v in a.items() if v}
    tokens = []
    for num, name, caret, star, sign, bad in _TOKEN.findall(source.strip()):
        if bad:
            raise CurveParseError(f"unexpected character {bad!r}")
        tokens.append(("num", int(num)) if num else ("var", name) if name else
                      ("^", None) if caret else ("*", None) if star else ("sign", sign))
    if not tokens:
        raise CurveParseError("empty polynomial")
    poly: dict[Monomial, int] = {}
    i = 0
    n = len(tokens)

    def factor(i):
        kind, val = tokens[i]
        if kind == "num":
            return i + 1, val, (0,) * len(variables)
        if kind == "var":
            if val not in variables:
                raise CurveParseError(f"unknown variable {val!r}")
            e = 1
            if i + 1 < n and tokens[i + 1][0] == "^":
                if i + 2 >= n or tokens[i + 2][0] != "num":
                    raise CurveParseError("'^' must be followed by an integer")
                e = tokens[i + 2][1]
                i += 2
            mono = [0] * len(variables)
            mono[variables.index(val)] = e
            return i + 1, 1, tuple(mono)
        raise CurveParseError(f"unexpected token {val or kind!r}")

    expect_term = True
    sign = 1
    while i < n:
        kind, val = tokens[i]
        if kind == "sign":
            if not expect_term:
                expect_term = True
                sign = 1
            if val == "-":
                sign = -sign
            i += 1
            continue
        if not expect_term:
            raise CurveParseError(f"missing operator before {val!r}")
        coeff, mono = sign, [0] * len(variables)
        while True:
            i, c, m = factor(i)
            coeff *= c
            mono = [a + b for a, b in zip(mono, m)]
            if i < n and tokens[i][0] == "*":
                i += 1
                if i >= n:
                    raise CurveParseError("dangling '*'")
                continue
            break
        key = tuple(mono)
        poly[key] = (poly.get(key, 0) + coeff) % p
        expect_term, sign = False, 1
    if expect_term:
        raise CurveParseError("dangling operator")
    return {k: v for k, v in poly.items() if v}


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    p: int
    q: int
    terms: tuple = ()
    h_terms: tuple = ()
    f_terms: tuple = ()
    infinity: tuple | int | None = None
    degree: int = 0
    source: str = ""

    @property
    def base_degree(self) -> int:
        k, q = 0, 1
        while q < self.q:
            q *= self.p
            k += 1
        return k

    def points_at_infinity(self, m: int) -> int:
        if self.infinity is None:
            return 0
        if isinstance(self.infinity, int):
            return self.infinity
        if m > len(self.infinity):
            raise ValueError(f"infinity rule gives no count for extension degree {m}")
        return self.infinity[m - 1]

    def default_genus(self) -> int:
        if self.kind == "plane":
            return (self.degree - 1) * (self.degree - 2) // 2
        return (self.degree - 1) // 2


def _check_q(p: int, q: int | None) -> int:
    q = q or p
    x = q
    while x % p == 0:
        x //= p
    if x != 1:
        raise ValueError(f"q={q} is not a power of p={p}")
    return q


def parse_curve(source: str, p: int, q: int | None = None) -> CurveSpec:
    """Projective plane curve ``F(x, y, z) = 0``; ``F`` must be homogeneous."""
    poly = parse_polynomial(source, p)
    if not poly:
        raise CurveParseError("polynomial is zero mod p")
    degrees = {sum(m) for m in poly}
    if len(degrees) != 1:
        raise CurveParseError(f"plane polynomial is not homogeneous (degrees {sorted(degrees)})")
    degree = degrees.pop()
    if degree > 8:
        raise CurveParseError("degree above 8 is not supported")
    terms = tuple(sorted((c, m) for m, c in poly.items()))
    return CurveSpec("plane", p, _check_q(p, q), terms=terms, degree=degree, source=source)


def artin_schreier_curve(h: str, f: str, p: int, q: int | None = None,
                         infinity: int | tuple | None = None) -> CurveSpec:
    """``y^2 + h(x) y = f(x)`` with an explicit count of points at infinity.

    Without a rule, one point per extension is assumed when ``deg f`` is odd.
    """
    hp = parse_polynomial(h, p, "x")
    fp = parse_polynomial(f, p, "x")
    if not fp:
        raise CurveParseError("f is zero mod p")
    if not hp and p == 2:
        raise CurveParseError("h must be nonzero in characteristic 2")
    deg = max(m[0] for m in fp)
    if deg > 8:
        raise CurveParseError("degree above 8 is not supported")
    if infinity is None:
        infinity = 1 if deg % 2 else None
        if infinity is None:
            raise ValueError("even-degree f needs an explicit points-at-infinity rule")
    return CurveSpec(
        "artin_schreier", p, _check_q(p, q),
        h_terms=tuple(sorted((c, m[0]) for m, c in hp.items())),
        f_terms=tuple(sorted((c, m[0]) for m, c in fp.items())),
        infinity=infinity, degree=deg, source=f"y^2 + ({h})*y = {f}",
    )


def _eval_terms(F: FiniteField, terms, columns) -> np.ndarray:
    """Evaluate ``sum c * prod col_i^e_i`` over aligned element arrays."""
    out = np.zeros(columns[0].shape, dtype=np.int64)
    for c, mono in terms:
        v = np.full(columns[0].shape, F.embed(c), dtype=np.int64)
        for col, e in zip(columns, mono):
            if e:
                v = F.mul(v, F.pow(col, e))
        out = F.add(out, v)
    return out


def count_points(curve: CurveSpec, m: int, modulus: list[int] | None = None) -> int:
    """Number of points over GF(q^m), by enumeration in chunks."""
    if m < 1:
        raise ValueError("m must be positive")
    Q = curve.q**m
    if Q * Q > ENUMERATION_BUDGET:
        raise BudgetExceeded(f"GF({Q}) needs {Q * Q} cells, budget is {ENUMERATION_BUDGET}")
    n = curve.base_degree * m
    F = field(curve.p, n, tuple(modulus) if modulus else None)
    elems = F.elements()
    rows = max(1, _CHUNK // Q)
    total = 0
    if curve.kind == "plane":
        # affine chart z = 1
        for start in range(0, Q, rows):
            xs = np.repeat(elems[start:start + rows], Q)
            ys = np.tile(elems, len(xs) // Q)
            zs = np.ones_like(xs)
            total += int(np.count_nonzero(_eval_terms(F, curve.terms, [xs, ys, zs]) == 0))
        # line at infinity: (x : 1 : 0) and (1 : 0 : 0)
        zero = np.zeros_like(elems)
        total += int(np.count_nonzero(_eval_terms(F, curve.terms, [elems, np.ones_like(elems), zero]) == 0))
        one = np.ones(1, dtype=np.int64)
        total += int(_eval_terms(F, curve.terms, [one, one * 0, one * 0])[0] == 0)
        return total
    if curve.kind == "artin_schreier":
        hx = _eval_terms(F, [(c, (e,)) for c, e in curve.h_terms], [elems]) if curve.h_terms else np.zeros_like(elems)
        fx = _eval_terms(F, [(c, (e,)) for c, e in curve.f_terms], [elems])
        y2 = F.pow(elems, 2)
        for start in range(0, Q, rows):
            idx = np.repeat(np.arange(start, min(start + rows, Q)), Q)
            ys = np.tile(elems, len(idx) // Q)
            lhs = F.add(y2[ys], F.mul(hx[idx], ys))
            total += int(np.count_nonzero(lhs == fx[idx]))
        return total + curve.points_at_infinity(m)
    raise ValueError(f"unknown curve kind {curve.kind!r}")
