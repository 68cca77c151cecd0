import itertools
from fractions import Fraction
from math import isqrt

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regprod.funcfield import (
    CURVE_PRESETS,
    BudgetExceeded,
    CurveParseError,
    FiniteField,
    ZetaNumerator,
    analyze_curve,
    artin_schreier_curve,
    build_preset,
    compare_numerators,
    count_points,
    inverse_roots,
    irreducible_polynomials,
    jacobi_fermat_numerator,
    numerator_from_counts,
    parse_curve,
    parse_polynomial,
    predict_counts,
    regprod_funcfield,
    regprod_funcfield_exponent,
    regprod_funcfield_via_roots,
    weil_validate,
)

F = Fraction


@pytest.mark.parametrize("p, n", [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4)])
def test_field_axioms(p, n):
    K = FiniteField(p, n)
    x = K.elements()
    a, b = np.meshgrid(x, x)
    assert np.all(K.add(a, b) == K.add(b, a))
    assert np.all(K.mul(a, b) == K.mul(b, a))
    assert np.all(K.add(x, K.neg(x)) == 0)
    nz = x[1:]
    assert np.all(K.mul(nz, K.inv(nz)) == 1)
    c = x[len(x) // 2]
    assert np.all(K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c)))
    # Frobenius fixes exactly the prime field
    frob = K.pow(x, p)
    assert np.all(K.add(frob, K.neg(K.pow(x, p))) == 0)
    assert np.count_nonzero(K.pow(x, p) == x) == p
    assert np.all(K.pow(x, K.q) == x)


def test_field_rejects():
    with pytest.raises(ValueError):
        FiniteField(4)
    with pytest.raises(ValueError):
        FiniteField(2, 2, [1, 0, 1])  # x^2 + 1 = (x + 1)^2 over GF(2)


def test_irreducible_count():
    # necklace formula: 3 irreducible quartics over GF(2), 8 cubics over GF(3)
    assert len(list(irreducible_polynomials(2, 4))) == 3
    assert len(list(irreducible_polynomials(3, 3))) == 8


def test_parse_polynomial_whitespace():
    assert parse_polynomial(" x =y ", 2) == {(1, 0, 0): 1, (0, 1, 0): 1}


def test_parse_polynomial():
    poly = parse_polynomial("x^3*y + y^3*z + z^3*x", 2)
    assert poly == {(3, 1, 0): 1, (0, 3, 1): 1, (1, 0, 3): 1}
    assert parse_polynomial("3*x - 5", 3) == {(0, 0, 0): 1}
    assert parse_polynomial("x^2 = y + 1", 5) == {(2, 0, 0): 1, (0, 1, 0): 4, (0, 0, 0): 4}


@pytest.mark.parametrize("bad", ["x^", "x + ", "x * * y", "x^2 + w", "2x$"])
def test_parse_errors(bad):
    with pytest.raises(CurveParseError):
        parse_polynomial(bad, 3)


def test_curve_errors():
    with pytest.raises(CurveParseError):
        parse_curve("x^3 + y^2*z + z", 2)
    with pytest.raises(CurveParseError):
        parse_curve("2*x^3 + 2*y^3", 2)
    with pytest.raises(CurveParseError):
        parse_curve("x^9 + y^9 + z^9", 2)
    with pytest.raises(ValueError):
        artin_schreier_curve("1", "x^4 + 1", 2)


def test_budget():
    curve = parse_curve("x^3+y^3+z^3", 2)
    with pytest.raises(BudgetExceeded):
        count_points(curve, 15)


def _brute_plane(poly, p):
    # projective points over GF(p) by direct enumeration with integers
    pts = 0
    for x, y, z in itertools.product(range(p), repeat=3):
        if (x, y, z) == (0, 0, 0):
            continue
        first = next(c for c in (x, y, z) if c)
        if first != 1:
            continue
        v = sum(c * x**a * y**b * z**e for (a, b, e), c in poly.items()) % p
        pts += v == 0
    return pts


@pytest.mark.parametrize("source, p", [("x^3+y^3+z^3", 7), ("x^3*y+y^3*z+z^3*x", 3), ("y^2*z - x^3 - x*z^2", 5),
                                       ("x^4 + y^4 + z^4", 13)])
def test_counts_against_brute_force(source, p):
    curve = parse_curve(source, p)
    assert count_points(curve, 1) == _brute_plane(parse_polynomial(source, p), p)


@pytest.mark.parametrize("p, m", [(2, 3), (2, 4), (3, 2), (3, 3), (3, 4)])
def test_counts_representation_independent(p, m):
    curve = parse_curve("x^3*y+y^3*z+z^3*x", p)
    moduli = list(itertools.islice(irreducible_polynomials(p, m), 3))
    assert len(moduli) >= 2
    counts = {count_points(curve, m, mod) for mod in moduli}
    assert len(counts) == 1


def test_fermat_cubic_over_f2():
    curve, g, _ = build_preset("fermat-cubic")
    counts = [count_points(curve, m) for m in (1, 2)]
    assert counts == [3, 9]
    num = numerator_from_counts(counts, 2, g)
    assert num.coeffs == (1, 0, 2)
    assert regprod_funcfield_exponent(num) == F(7, 3)


def test_klein_quartic():
    curve, g, _ = build_preset("klein-quartic")
    counts = [count_points(curve, m) for m in range(1, 7)]
    assert counts == [3, 5, 24, 17, 33, 38]
    num = weil_validate(numerator_from_counts(counts, 2, g))
    assert num.coeffs == (1, 0, 0, 5, 0, 0, 8)
    assert num.weil_status == "validated"
    assert regprod_funcfield_exponent(num) == -4


def test_overdetermination():
    curve, g, _ = build_preset("fermat-cubic")
    counts = [count_points(curve, m) for m in range(1, 2 * g + 3)]
    num = numerator_from_counts(counts[: 2 * g], 2, g)
    assert predict_counts(num, 2 * g + 2) == counts


def test_inconsistent_counts():
    with pytest.raises(ValueError):
        numerator_from_counts([3, 10], 2, 1)
    with pytest.raises(ValueError):
        numerator_from_counts([3], 2, 1)


def test_rational_function_field():
    for q in (2, 3, 4, 5, 7, 8, 9):
        assert regprod_funcfield_exponent(ZetaNumerator((1,), q, 0)) == F(3 * q - 1, q - 1)


def test_hyperelliptic_discrepancy():
    curve, g, reference = build_preset("hyperelliptic")
    assert [count_points(curve, m) for m in range(1, 5)] == [3, 5, 9, 33]
    report = analyze_curve(curve, g, reference)
    assert report.exact == F(-7, 5)
    assert report.status == "ok"
    assert report.diagnostics["discrepancy"] is True
    assert report.diagnostics["comparison"]["reference_weil"] == "violated"
    assert regprod_funcfield_exponent(reference) == F(33, 5)
    assert str(reference) == "1+4t+4t^2-4t^4"


def test_weil_violation_detected():
    num = weil_validate(ZetaNumerator((1, 4, 4, 0, -4), 2, 2))
    assert num.weil_status == "violated"
    assert num.details["max_deviation"] > 0.1
    # right magnitudes but broken functional equation
    num = weil_validate(ZetaNumerator((1, 0, 1), 2, 1))
    assert num.weil_status == "violated"


def test_functional_equation():
    assert ZetaNumerator((1, 0, 0, 5, 0, 0, 8), 2, 3).functional_equation_holds()
    assert not ZetaNumerator((1, 1, 3), 2, 1).functional_equation_holds()


@pytest.mark.parametrize("ell, p", [(3, 7), (3, 13), (3, 19), (5, 11)])
def test_jacobi_numerator_matches_counts(ell, p):
    num = jacobi_fermat_numerator(ell, p)
    curve = parse_curve(f"x^{ell}+y^{ell}+z^{ell}", p)
    assert predict_counts(num, 2) == [count_points(curve, 1), count_points(curve, 2)]
    assert weil_validate(num).weil_status == "validated"


def test_jacobi_rejects():
    with pytest.raises(ValueError):
        jacobi_fermat_numerator(3, 5)


def test_via_roots_examples():
    for coeffs, q, g, expected in [((1, 0, 2), 2, 1, F(7, 3)), ((1, 0, 0, 5, 0, 0, 8), 2, 3, F(-4)),
                                   ((1, 0, 0, 0, 4), 2, 2, F(-7, 5))]:
        num = ZetaNumerator(coeffs, q, g)
        pis = inverse_roots(num)
        assert len(pis) == 2 * g
        value = regprod_funcfield_via_roots(pis, g, q, h=num.at_one())
        assert abs(value - mpmath.mpf(expected.numerator) / expected.denominator) < 1e-10


def test_via_roots_rejects_wrong_class_number():
    pis = inverse_roots(ZetaNumerator((1, 0, 2), 2, 1))
    with pytest.raises(ValueError):
        regprod_funcfield_via_roots(pis, 1, 2, h=4)


def weil_numerators():
    """Products of real Weil factors ``1 - a t + q t^2`` with ``|a| <= 2 sqrt(q)``."""
    def build(q, bs):
        poly = [1]
        for b in bs:
            a = b % (2 * isqrt(4 * q) + 1) - isqrt(4 * q)
            factor = [1, -a, q]
            poly = [sum(poly[i - j] * factor[j] for j in range(3) if 0 <= i - j < len(poly))
                    for i in range(len(poly) + 2)]
        return ZetaNumerator(tuple(poly), q, len(bs))
    return st.builds(build, st.sampled_from([2, 3, 4, 5, 7, 8, 9]),
                     st.lists(st.integers(0, 100), min_size=1, max_size=3))


@settings(max_examples=100)
@given(weil_numerators())
def test_roots_path_matches_polynomial_path(num):
    checked = weil_validate(num)
    assert checked.weil_status == "validated"
    exact = regprod_funcfield_exponent(num)
    value = regprod_funcfield_via_roots(inverse_roots(num), num.g, num.q)
    assert abs(value - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-10


@given(weil_numerators())
def test_counts_roundtrip(num):
    counts = predict_counts(num, 2 * num.g)
    assert numerator_from_counts(counts, num.q, num.g).coeffs == num.coeffs


def test_report_and_compare():
    num = weil_validate(ZetaNumerator((1, 0, 2), 2, 1))
    report = regprod_funcfield(num, "curve", {"q": 2})
    assert report.to_dict()["exponent"]["exact"] == "7/3"
    cmp = compare_numerators(num, ZetaNumerator((1, 1, 2), 2, 1))
    assert cmp["match"] is False
    assert set(CURVE_PRESETS) == {"fermat-cubic", "klein-quartic", "hyperelliptic"}
