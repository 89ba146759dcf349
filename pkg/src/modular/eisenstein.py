"""
Eisenstein series q-expansions with coefficients in Z[zeta_n].
"""

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field
from sympy import divisors, factorint

from ..arith.bernoulli import generalized_bernoulli
from ..arith.char import (
    char_exponent,
    character_text,
    inverse,
    is_parity_admissible,
    multiply,
    primitive_character,
    primitive_characters,
    trivial_character,
)
from ..arith.cyclo import (
    CyclotomicNumber,
    from_exponents,
    ideal_from_generators,
    one,
    pi_valuation,
    zero,
    zeta_power,
)
from ..models.schemas import DirichletCharacter

logger = logging.getLogger(__name__)


def default_precision(k: int) -> int:
    """Q = max(200, 4k)."""
    return max(200, 4 * k)


class QSeries(BaseModel):
    """Truncated q-expansion a_0 + a_1 q + ... + a_Q q^Q over Q(zeta_n)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Coefficient ring conductor")
    coeffs: Tuple[CyclotomicNumber, ...] = Field(..., description="a_0 .. a_Q")

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, index: int) -> CyclotomicNumber:
        return self.coeffs[index]

    def _check(self, other: "QSeries") -> None:
        if other.n != self.n or other.precision != self.precision:
            raise ValueError("Series live in different rings or precisions")

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return _series(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return _series(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        Q = self.precision
        out = [zero(self.n) for _ in range(Q + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(Q - i + 1):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return _series(self.n, out)

    def scale(self, c) -> "QSeries":
        """Multiply every coefficient by a scalar or ring element."""
        return _series(self.n, [a * c for a in self.coeffs])

    def dilate(self, t: int) -> "QSeries":
        """f(q^t), same precision."""
        if t < 1:
            raise ValueError(f"Dilation factor must be positive, got {t}")
        out = [zero(self.n) for _ in range(self.precision + 1)]
        for i in range(self.precision // t + 1):
            out[i * t] = self.coeffs[i]
        return _series(self.n, out)

    def lift(self, L: int) -> "QSeries":
        return _series(L, [a.lift(L) for a in self.coeffs])

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs[:8]):
            if a.is_zero():
                continue
            body = str(a)
            if i:
                body = f"({body})q" if i == 1 else f"({body})q^{i}"
            terms.append(body)
        return " + ".join(terms) + f" + O(q^{self.precision + 1})"


def _series(n: int, coeffs: Sequence[CyclotomicNumber]) -> QSeries:
    return QSeries.model_construct(n=n, coeffs=tuple(coeffs))


class EisensteinBasisElement(BaseModel):
    """One Eisenstein series in a basis of E_k(N, chi)."""

    model_config = ConfigDict(frozen=True)

    k: int
    chi1: DirichletCharacter
    chi2: DirichletCharacter
    t: int = Field(1, ge=1)
    series: QSeries
    quasimodular: bool = Field(False, description="Level-one E_2, not a modular form")

    @property
    def label(self) -> str:
        return f"E_{self.k}[{character_text(self.chi1)}, {character_text(self.chi2)}, t={self.t}]"


def sigma_chi(m: int, chi: DirichletCharacter, index: int) -> CyclotomicNumber:
    """sum_{d | index} chi(d) d^m."""
    n = chi.image_order
    vector = [0] * n
    for d in divisors(index):
        exponent = char_exponent(chi, d)
        if exponent is not None:
            vector[exponent] += d**m
    return from_exponents(n, vector)


def eisenstein_qexp(
    k: int,
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    t: int = 1,
    Q: Optional[int] = None,
) -> QSeries:
    """
    sum_{n >= 1} (sum_{d | n} chi2(d) chi1(n/d) d^(k-1)) q^(n t), constant term 0.

    Args:
        k: Weight, at least 1
        chi1: Character applied to n/d
        chi2: Character applied to d
        t: Dilation
        Q: Truncation precision

    Returns:
        The series over Z[zeta_L], L = lcm of the image orders

    Raises:
        ValueError: When both characters are trivial (a constant term is then required;
            use eisenstein_normalized), or on a bad weight or dilation
    """
    if k < 1:
        raise ValueError(f"Weight must be at least 1, got {k}")
    if chi1.is_trivial and chi2.is_trivial:
        raise ValueError("Both characters trivial: use eisenstein_normalized")
    if t < 1:
        raise ValueError(f"Dilation factor must be positive, got {t}")
    Q = Q or default_precision(k)
    n1, n2 = chi1.image_order, chi2.image_order
    L = lcm(n1, n2)
    coeffs = [zero(L) for _ in range(Q + 1)]
    for index in range(1, Q // t + 1):
        vector = [0] * L
        for d in divisors(index):
            e2 = char_exponent(chi2, d)
            e1 = char_exponent(chi1, index // d)
            if e1 is None or e2 is None:
                continue
            vector[(e2 * (L // n2) + e1 * (L // n1)) % L] += d ** (k - 1)
        coeffs[index * t] = from_exponents(L, vector)
    return _series(L, coeffs)


def _clear_content(coeffs: List[CyclotomicNumber]) -> List[CyclotomicNumber]:
    """Scale a0 + a1 * (integral series) to coprime integral coefficients."""
    common = 1
    for c in coeffs:
        common = lcm(common, c.denominator)
    coeffs = [c * common for c in coeffs]
    content = 0
    for c in coeffs:
        for value in c.numerator:
            content = gcd(content, value)
    if content > 1:
        coeffs = [c * Fraction(1, content) for c in coeffs]

    a0, a1 = coeffs[0], coeffs[1]
    if not a0.is_zero() and (a1 / a0).is_integral():
        inv = a0.inverse()
        return [c * inv for c in coeffs]
    if not a1.is_zero() and (a0 / a1).is_integral():
        inv = -a1.inverse()
        return [c * inv for c in coeffs]

    n = a0.n
    if n == 1:
        return [-c for c in coeffs] if a0.numerator[0] < 0 else coeffs
    factors = factorint(n)
    if len(factors) == 1:
        (q, w), = factors.items()
        shift = min(pi_valuation(a0, q, w), pi_valuation(a1, q, w))
        if shift > 0:
            varpi = one(n) - zeta_power(n, n // q**w)
            inv = varpi.inverse() ** shift
            coeffs = [c * inv for c in coeffs]
    if not ideal_from_generators(n, coeffs[:2]).is_unit:
        logger.warning("Non-principal content left in normalized series over Z[zeta_%d]", n)
    return coeffs


def eisenstein_normalized(k: int, chi: DirichletCharacter, Q: Optional[int] = None) -> QSeries:
    """
    The level-f series B_{k,chi}/2k - sum_n sigma_{k-1,chi}(n) q^n, scaled to coprime
    integral coefficients (1 + 240 sum sigma_3(n) q^n for k = 4, chi trivial).
    """
    if k < 1:
        raise ValueError(f"Weight must be at least 1, got {k}")
    chi = primitive_character(chi)
    if not is_parity_admissible(k, chi):
        raise ValueError(f"Parity mismatch between weight {k} and {chi}")
    Q = Q or default_precision(k)
    bernoulli = generalized_bernoulli(k, chi).value
    if bernoulli.is_zero():
        raise ArithmeticError(f"B_{{{k},chi}} vanishes for {chi}")
    coeffs = [bernoulli * Fraction(1, 2 * k)]
    coeffs += [-sigma_chi(k - 1, chi, index) for index in range(1, Q + 1)]
    return _series(chi.image_order, _clear_content(coeffs))


def _basis_series(
    k: int, chi1: DirichletCharacter, chi2: DirichletCharacter, t: int, Q: int
) -> Optional[QSeries]:
    if chi1.is_trivial and chi2.is_trivial:
        e = eisenstein_normalized(k, trivial_character(1), Q)
        if k != 2:
            return e.dilate(t)
        if t == 1:
            return None
        return e - e.dilate(t).scale(t)
    if chi1.is_trivial:
        return eisenstein_normalized(k, chi2, Q).dilate(t)
    return eisenstein_qexp(k, inverse(chi1), chi2, t, Q)


def basis_enumeration(
    k: int, N: int, chi: DirichletCharacter, Q: Optional[int] = None
) -> List[EisensteinBasisElement]:
    """
    Basis of E_k(N, chi): one element per (chi1, chi2, t) with chi1 chi2 inducing chi,
    N1 N2 t | N. Coefficients are lifted to a common Z[zeta_L].
    """
    if N <= 1:
        raise ValueError("Level must exceed 1; use level_one_basis")
    if k < 1:
        raise ValueError(f"Weight must be at least 1, got {k}")
    if N % chi.conductor:
        raise ValueError(f"Conductor {chi.conductor} does not divide the level {N}")
    chi = primitive_character(chi)
    if not is_parity_admissible(k, chi):
        raise ValueError(f"Parity mismatch between weight {k} and {chi}")
    Q = Q or default_precision(k)

    elements = []
    seen = set()
    for N1 in divisors(N):
        for chi1 in primitive_characters(N1):
            chi2 = primitive_character(multiply(chi, chi1))
            if N % (N1 * chi2.modulus):
                continue
            for t in divisors(N // (N1 * chi2.modulus)):
                if k == 1:
                    swapped = (str(inverse(chi2)), str(inverse(chi1)), t)
                    if swapped in seen:
                        continue
                    seen.add((str(chi1), str(chi2), t))
                series = _basis_series(k, chi1, chi2, t, Q)
                if series is None:
                    continue
                elements.append((chi1, chi2, t, series))

    L = 1
    for _, _, _, series in elements:
        L = lcm(L, series.n)
    logger.debug("E_%d(%d, %s): %d elements over Z[zeta_%d]", k, N, chi, len(elements), L)
    return [
        EisensteinBasisElement(k=k, chi1=chi1, chi2=chi2, t=t, series=series.lift(L))
        for chi1, chi2, t, series in elements
    ]


def level_one_basis(k: int, Q: Optional[int] = None) -> List[EisensteinBasisElement]:
    """[E_k] for even k >= 2; E_2 is flagged quasimodular."""
    if k < 2 or k % 2:
        raise ValueError(f"Level one needs an even weight >= 2, got {k}")
    trivial = trivial_character(1)
    series = eisenstein_normalized(k, trivial, Q)
    if k == 2:
        logger.info("E_2 is quasimodular; using its q-expansion as a p-adic modular form")
    return [
        EisensteinBasisElement(
            k=k, chi1=trivial, chi2=trivial, t=1, series=series, quasimodular=k == 2
        )
    ]
