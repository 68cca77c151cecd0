"""Result record shared by every regularized-product computation, plus rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .arith import to_mp, working_precision


@dataclass
class RegProdReport:
    command: str
    inputs: dict
    exponent: object
    exact: Fraction | None = None
    breakdown: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    status: str = "ok"
    precision_bits: int = 128

    @property
    def value(self):
        with working_precision(self.precision_bits):
            return mpmath.exp(to_mp(self.exponent))

    def to_dict(self, digits: int = 30) -> dict:
        with working_precision(self.precision_bits):
            exponent = {"float": float(self.exponent), "decimal": mpmath.nstr(to_mp(self.exponent), digits)}
            if self.exact is not None:
                exponent = {"exact": _fraction_str(self.exact), **exponent}
            return {
                "command": self.command,
                "inputs": _plain(self.inputs),
                "exponent": exponent,
                "value": mpmath.nstr(self.value, digits),
                "breakdown": _plain(self.breakdown, digits),
                "diagnostics": {"precision_bits": self.precision_bits, **_plain(self.diagnostics, digits)},
                "status": self.status,
            }


def _fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _plain(obj, digits: int = 30):
    """Convert nested results into JSON-friendly values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v, digits) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return _fraction_str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, mpmath.mpc):
        return {"re": mpmath.nstr(obj.real, digits), "im": mpmath.nstr(obj.imag, digits)}
    if isinstance(obj, mpmath.mpf):
        return mpmath.nstr(obj, digits)
    if isinstance(obj, float):
        return repr(obj)
    return str(obj)


def emit_report(report: RegProdReport, as_json: bool = False, digits: int = 30) -> str:
    data = report.to_dict(digits)
    if as_json:
        return json.dumps(data, indent=2, sort_keys=True)
    lines = [f"{data['command']}: {data['status']}"]
    for k, v in data["inputs"].items():
        lines.append(f"  {k} = {v}")
    exp = data["exponent"]
    if "exact" in exp:
        lines.append(f"  exponent = {exp['exact']}  (~ {exp['decimal']})")
    else:
        lines.append(f"  exponent = {exp['decimal']}")
    lines.append(f"  value    = {data['value']}")
    if data["breakdown"]:
        lines.append("  breakdown:")
        for k, v in data["breakdown"].items():
            lines.append(f"    {k}: {json.dumps(v, sort_keys=True)}")
    lines.append("  diagnostics:")
    for k, v in data["diagnostics"].items():
        lines.append(f"    {k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)
