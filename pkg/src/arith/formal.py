"""
The multiplicative formal group over Z_p and its twisted torsion.
"""

from math import comb
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field
from sympy import multiplicity

from ..models.schemas import IdealHNF


class TruncatedSeries(BaseModel):
    """sum_{j=1}^{D} c_j t^j, coefficients reduced mod `modulus` when one is set."""

    model_config = ConfigDict(frozen=True)

    coefficients: Tuple[int, ...] = Field(..., description="c_1, ..., c_D")
    modulus: Optional[int] = Field(None, ge=1, description="p^M, or None for exact integers")

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def _reduce(self, values) -> Tuple[int, ...]:
        if self.modulus is None:
            return tuple(values)
        return tuple(v % self.modulus for v in values)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        D = min(self.degree, other.degree)
        out = [0] * D
        for i, a in enumerate(self.coefficients[:D], start=1):
            if not a:
                continue
            for j, b in enumerate(other.coefficients[: D - i], start=1):
                out[i + j - 1] += a * b
        return TruncatedSeries(coefficients=self._reduce(out), modulus=self.modulus)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(t)) truncated at the common degree."""
        D = min(self.degree, inner.degree)
        inner = TruncatedSeries(coefficients=inner.coefficients[:D], modulus=self.modulus)
        total = [0] * D
        power = inner
        for c in self.coefficients[:D]:
            if c:
                for idx, value in enumerate(power.coefficients):
                    total[idx] += c * value
            power = power * inner
        return TruncatedSeries(coefficients=self._reduce(total), modulus=self.modulus)

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def _binomial(a: int, j: int) -> int:
    """C(a, j) for any integer a."""
    if a >= 0:
        return comb(a, j)
    return (-1) ** j * comb(j - a - 1, j)


def mult_by_a_series(a: int, D: int, p: int, M: int) -> TruncatedSeries:
    """
    [a](t) = (1+t)^a - 1 = sum_{j>=1} C(a, j) t^j, truncated at t^D, coefficients mod p^M.

    Args:
        a: Integer representative of the p-adic multiplier
        D: Truncation degree
        p: The prime
        M: Coefficient precision

    Returns:
        The truncated series
    """
    if D < 1 or M < 1:
        raise ValueError("Truncation degree and precision must be positive")
    modulus = p**M
    coefficients = tuple(_binomial(a, j) % modulus for j in range(1, D + 1))
    return TruncatedSeries(coefficients=coefficients, modulus=modulus)


def vanishing_power(p: int, D: int, M: int) -> int:
    """Least v with [p^v](t) = 0 mod (p^M, t^(D+1))."""
    v = 0
    while not mult_by_a_series(p**v, D, p, M).is_zero():
        v += 1
    return v


def torsion_order(n: int, p: int, ideal: IdealHNF) -> int:
    """|A/I| for A = Z_p[zeta_n] and I the given nonzero ideal: the p-part of its norm."""
    if ideal.n != n:
        raise ValueError(f"Ideal of Z[zeta_{ideal.n}] given for ring Z[zeta_{n}]")
    if ideal.is_zero:
        raise ValueError("Torsion of the zero ideal is infinite")
    return p ** int(multiplicity(p, ideal.norm))
