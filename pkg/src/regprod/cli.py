"""Command-line entry point: ``regprod <subcommand> [options]``.

Exit codes: 0 success, 2 validation or precision fault, 64 unknown
subcommand, 65 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from .arith import PrecisionError, default_precision, factorize, working_precision
from .dirichlet import enumerate_characters
from .funcfield import (
    CURVE_PRESETS,
    CurveParseError,
    ZetaNumerator,
    analyze_curve,
    artin_schreier_curve,
    build_preset,
    compare_numerators,
    parse_curve,
    regprod_funcfield,
    weil_validate,
)
from .lfunctions import l_at_zero, l_taylor_at_zero
from .numberfield import PRESETS, InvariantViolation, NumberFieldData, regprod_number_field
from .progressions import ProgressionTarget, regprod_all_primes, regprod_progression
from .report import RegProdReport, _plain, emit_report
from .special import HurwitzEvaluator, bernoulli, bernoulli_poly

EXIT_OK, EXIT_FAULT, EXIT_USAGE, EXIT_DATA = 0, 2, 64, 65


class UsageError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        subcommand = ("argument command" in message or "argument what" in message
                      or message.endswith((": command", ": what")))
        code = EXIT_USAGE if subcommand and ("invalid choice" in message or "required" in message) else EXIT_DATA
        raise UsageError(f"{self.prog}: {message}", code)


def _common(top: bool) -> argparse.ArgumentParser:
    # subcommand copies must not overwrite values given before the subcommand
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
    common.add_argument("--precision", type=int, default=d(None), help="working precision in bits (>= 53)")
    common.add_argument("--verify", action="store_true", default=d(False), help="attach invariant residuals")
    common.add_argument("--tol", type=float, default=d(1e-9), help="validation tolerance")
    return common


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="regprod", description="Regularized products over primes, ideals and closed points.",
                     parents=[_common(True)])
    common = _common(False)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    sub.add_parser("primes", parents=[common], help="product over all rational primes")

    p = sub.add_parser("progression", parents=[common], help="primes p = a (mod m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int, required=True)

    p = sub.add_parser("number-field", parents=[common], help="prime-ideal norms of Q or a quadratic field")
    p.add_argument("--field", choices=sorted(PRESETS), help="bundled field")
    p.add_argument("--r1", type=int)
    p.add_argument("--r2", type=int)
    p.add_argument("--w", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--R", type=str, help="regulator (decimal)")
    p.add_argument("--D", type=int, help="fundamental discriminant")

    p = sub.add_parser("curve", parents=[common], help="closed points of a curve over GF(q)")
    p.add_argument("--preset", choices=sorted(CURVE_PRESETS))
    p.add_argument("--kind", choices=["plane", "artin_schreier"], default="plane")
    p.add_argument("--q", type=int)
    p.add_argument("--f", help="plane: F(x,y,z); artin_schreier: f(x)")
    p.add_argument("--h", help="artin_schreier: h(x)")
    p.add_argument("--infinity", type=_int_list, help="points at infinity: one integer or one per degree")
    p.add_argument("--genus", type=int)
    p.add_argument("--numerator", type=_int_list, help="use L(t) coefficients directly, e.g. 1,0,2")
    p.add_argument("--expected-numerator", type=_int_list, help="compare against these L(t) coefficients")

    p = sub.add_parser("rational-ff", parents=[common], help="the rational function field GF(q)(T)")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("zeta", parents=[common], help="utility evaluators")
    zsub = p.add_subparsers(dest="what", metavar="what", parser_class=_Parser)
    zsub.required = True
    z = zsub.add_parser("hurwitz", parents=[common], help="Hurwitz zeta or its Taylor data at 0")
    z.add_argument("--s", type=str, default="0")
    z.add_argument("--x", type=_fraction, required=True)
    z.add_argument("--order", type=int, help="Taylor coefficients at s=0 instead of a value")
    z = zsub.add_parser("lvalue", parents=[common], help="Taylor data of L(s, chi) at 0")
    z.add_argument("--m", type=int, required=True)
    z.add_argument("--index", type=int, default=0, help="position in the character enumeration")
    z.add_argument("--order", type=int, default=2)
    z = zsub.add_parser("bernoulli", parents=[common], help="Bernoulli numbers or polynomials")
    z.add_argument("--k", type=int, required=True)
    z.add_argument("--x", type=_fraction)
    return parser


def _prime_of(q: int) -> int:
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return next(iter(fac))


def _run_curve(args) -> RegProdReport:
    reference = None
    if args.preset:
        curve, genus, reference = build_preset(args.preset)
        if args.genus is not None:
            genus = args.genus
    elif args.numerator:
        if args.q is None or args.genus is None:
            raise ValueError("--numerator needs --q and --genus")
        num = weil_validate(ZetaNumerator(args.numerator, args.q, args.genus), args.tol)
        report = regprod_funcfield(num, "curve", {"numerator": str(num), "q": args.q, "genus": args.genus})
        if args.expected_numerator:
            ref = ZetaNumerator(args.expected_numerator, args.q, args.genus)
            cmp = compare_numerators(num, ref)
            report.diagnostics["discrepancy"] = not cmp["match"]
            report.diagnostics["comparison"] = cmp
        return report
    else:
        if args.q is None or args.f is None:
            raise ValueError("curve needs --preset, --numerator, or --q with --f")
        p = _prime_of(args.q)
        if args.kind == "plane":
            curve = parse_curve(args.f, p, args.q)
        else:
            infinity = args.infinity
            if infinity is not None and len(infinity) == 1:
                infinity = infinity[0]
            curve = artin_schreier_curve(args.h or "1", args.f, p, args.q, infinity)
        genus = args.genus
    if args.expected_numerator:
        reference = ZetaNumerator(args.expected_numerator, curve.q, genus if genus is not None else curve.default_genus())
    return analyze_curve(curve, genus, reference, args.tol, args.verify)


def _run_number_field(args, ev) -> RegProdReport:
    if args.field:
        field = PRESETS[args.field]
    else:
        missing = [k for k in ("r1", "r2", "w", "h", "R") if getattr(args, k) is None]
        if missing:
            raise ValueError(f"custom field needs --{', --'.join(missing)}")
        field = NumberFieldData("custom", args.r1, args.r2, args.w, args.h, mpmath.mpf(args.R),
                                args.D if args.D is not None else 1)
    return regprod_number_field(field, ev, args.tol)


def _run_zeta(args, ev) -> dict:
    if args.what == "hurwitz":
        if args.order is not None:
            data = ev.taylor_at_zero(args.x, args.order)
            return {"x": args.x, "taylor": list(data.coefficients), "error": float(data.error)}
        return {"s": args.s, "x": args.x, "value": ev.zeta(mpmath.mpmathify(args.s), args.x)}
    if args.what == "lvalue":
        chars = enumerate_characters(args.m)
        if not 0 <= args.index < len(chars):
            raise ValueError(f"index must be in 0..{len(chars) - 1}")
        chi = chars[args.index]
        exp = l_taylor_at_zero(chi, args.order, ev)
        return {
            "character": chi.label,
            "conductor": chi.conductor(),
            "parity": chi.parity,
            "L(0)": l_at_zero(chi),
            "order_of_vanishing": exp.order_of_vanishing,
            "taylor": list(exp.taylor.coeffs),
            "diagnostics": exp.diagnostics,
        }
    if args.x is not None:
        return {"k": args.k, "x": args.x, "B_k(x)": bernoulli_poly(args.k, args.x)}
    return {"k": args.k, "B_k": bernoulli(args.k)}


def run_command(argv) -> tuple[int, str]:
    """Execute a command line; returns ``(exit_code, output)``."""
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        return exc.code, str(exc)
    except SystemExit as exc:  # --help
        return int(exc.code or 0), ""
    try:
        bits = args.precision or default_precision()
        if bits < 53:
            raise ValueError("--precision must be at least 53")
        if args.tol is not None and args.tol <= 0:
            raise ValueError("--tol must be positive")
        ev = HurwitzEvaluator(precision=bits)
        with working_precision(bits):
            if args.command == "zeta":
                data = _run_zeta(args, ev)
                if args.json:
                    return EXIT_OK, json.dumps(_plain(data), indent=2, sort_keys=True)
                return EXIT_OK, "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in _plain(data).items())
            if args.command == "primes":
                report = regprod_all_primes(ev)
            elif args.command == "progression":
                report = regprod_progression(ProgressionTarget(args.m, args.a), ev)
            elif args.command == "number-field":
                report = _run_number_field(args, ev)
            elif args.command == "curve":
                report = _run_curve(args)
            else:
                if args.q < 2 or len(factorize(args.q)) != 1:
                    raise ValueError(f"q = {args.q} is not a prime power")
                report = regprod_funcfield(ZetaNumerator((1,), args.q, 0, "validated"), "rational-ff", {"q": args.q})
            report.precision_bits = bits
            return (EXIT_OK if report.status == "ok" else EXIT_FAULT), emit_report(report, args.json)
    except (PrecisionError, InvariantViolation, ArithmeticError) as exc:
        return EXIT_FAULT, f"regprod: fault: {exc}"
    except (CurveParseError, ValueError, KeyError) as exc:
        return EXIT_DATA, f"regprod: malformed input: {exc}"


def main(argv=None) -> int:
    code, out = run_command(sys.argv[1:] if argv is None else argv)
    if out:
        print(out, file=sys.stderr if out.startswith("regprod") else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
