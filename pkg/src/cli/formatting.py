"""
Output helpers for the command line: readable ideal names, JSON, aligned text and CSV.
"""

import csv
import io
import json
from typing import Any, Dict, List, Optional, Sequence

from sympy import factorint, integer_nthroot

from ..arith.cyclo import (
    CyclotomicNumber,
    ideal_compare,
    ideal_from_generators,
    one,
    ring_degree,
    zeta_power,
)
from ..arith.primes import p_adic_valuation
from ..models.schemas import IdealHNF
from ..modular.eisenstein import QSeries


def _principal_integer(ideal: IdealHNF, norm: int) -> Optional[int]:
    """c when norm = c^d and the ideal is (c)."""
    c, exact = integer_nthroot(norm, ring_degree(ideal.n))
    if exact and ideal_compare(ideal, ideal_from_generators(ideal.n, [int(c)])) == "equal":
        return int(c)
    return None


def describe_ideal(ideal: IdealHNF) -> str:
    """
    Name an ideal the way it is usually written: (8), (1-ζ5), 2(1-ζ4)^3.

    Args:
        ideal: Ideal of Z[zeta_n]

    Returns:
        A short generator form, or the canonical 'n; rows' text when no simple generator fits
    """
    if ideal.is_zero:
        return "(0)"
    if ideal.is_unit:
        return "(1)"
    c = _principal_integer(ideal, ideal.norm)
    if c is not None:
        return f"({c})"

    n, d = ideal.n, ring_degree(ideal.n)
    for p in sorted(factorint(ideal.norm)):
        w = p_adic_valuation(n, p)
        for j in range(w, 0, -1):
            pi = one(n) - zeta_power(n, n // p**j)
            step = p ** (d // ((p - 1) * p ** (j - 1)))
            element: CyclotomicNumber = one(n)
            power, rest = 0, ideal.norm
            while rest % step == 0:
                power += 1
                rest //= step
                element = element * pi
                c, exact = integer_nthroot(rest, d)
                if not exact:
                    continue
                candidate = ideal_from_generators(n, [element * int(c)])
                if ideal_compare(ideal, candidate) == "equal":
                    base = f"1-ζ{p**j}"
                    body = f"({base})" if power == 1 else f"({base})^{power}"
                    return body if c == 1 else f"{c}{body}"
    return str(ideal)


def ideal_payload(ideal: IdealHNF) -> Dict[str, Any]:
    return {"ideal": describe_ideal(ideal), "hnf": str(ideal), "norm": ideal.norm}


def series_payload(series: QSeries) -> Dict[str, Any]:
    """Coefficient vectors in the power basis; denominators only when some are non-trivial."""
    payload: Dict[str, Any] = {
        "n": series.n,
        "precision": series.precision,
        "coefficients": [list(c.numerator) for c in series.coeffs],
    }
    if any(c.denominator != 1 for c in series.coeffs):
        payload["denominators"] = [c.denominator for c in series.coeffs]
    return payload


def to_json(payload: Any) -> str:
    """Sorted keys so repeated runs print identical bytes."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False, default=str)


def to_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [["" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def to_csv(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buffer.getvalue().rstrip("\n")


def to_mapping_text(payload: Dict[str, Any]) -> str:
    """key: value lines for single records."""
    width = max((len(key) for key in payload), default=0)
    lines: List[str] = []
    for key, value in payload.items():
        if isinstance(value, (list, tuple)):
            value = ", ".join(str(v) for v in value)
        lines.append(f"{key.ljust(width)}  {value}")
    return "\n".join(lines)
