"""
Bernoulli numbers, Bernoulli polynomials and generalized Bernoulli numbers B_{k,chi}.
"""

import logging
import threading
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, List, Union

from pydantic import BaseModel, ConfigDict, Field

from ..models.schemas import BernoulliRow, DirichletCharacter
from .char import (
    char_exponent,
    character_text,
    is_parity_admissible,
    primitive_character,
    primitive_characters,
)
from .cyclo import CyclotomicNumber, from_exponents
from .primes import prime_decomposition

logger = logging.getLogger(__name__)

_TABLE: List[Fraction] = [Fraction(1)]
_TABLE_LOCK = threading.Lock()


class GeneralizedBernoulli(BaseModel):
    """B_{k,chi} for a primitive chi, in Q(zeta_n) with n the image order."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=0)
    character: DirichletCharacter
    value: CyclotomicNumber


def bernoulli_rational(k: int) -> Fraction:
    """B_k with the convention B_1 = -1/2."""
    if k < 0:
        raise ValueError(f"Bernoulli index must be non-negative, got {k}")
    if k < len(_TABLE):
        return _TABLE[k]
    with _TABLE_LOCK:
        for m in range(len(_TABLE), k + 1):
            if m > 1 and m % 2:
                _TABLE.append(Fraction(0))
                continue
            total = sum(comb(m + 1, j) * _TABLE[j] for j in range(m))
            _TABLE.append(-total / (m + 1))
    return _TABLE[k]


def bernoulli_polynomial(k: int, x: Union[int, Fraction]) -> Fraction:
    """B_k(x) = sum_j C(k, j) B_j x^(k-j)."""
    x = Fraction(x)
    terms = (comb(k, j) * bernoulli_rational(j) * x ** (k - j) for j in range(k + 1))
    return sum(terms, Fraction(0))


def generalized_bernoulli(k: int, chi: DirichletCharacter) -> GeneralizedBernoulli:
    """
    B_{k,chi} = f^(k-1) * sum_{a=1}^{f} chi(a) B_k(a/f) for chi primitive of conductor f.

    Args:
        k: Weight, at least 1
        chi: Primitive character

    Returns:
        The exact value in Q(zeta_n)
    """
    if k < 1:
        raise ValueError(f"Weight must be at least 1, got {k}")
    if not chi.is_primitive:
        raise ValueError(f"{chi} is not primitive; pass primitive_character(chi)")
    f = chi.conductor
    n = chi.image_order
    sums = [Fraction(0)] * n
    for a in range(1, f + 1):
        exponent = char_exponent(chi, a)
        if exponent is not None:
            sums[exponent] += bernoulli_polynomial(k, Fraction(a, f))
    terms = [s * Fraction(f) ** (k - 1) for s in sums]
    denominator = 1
    for t in terms:
        denominator = lcm(denominator, t.denominator)
    vector = [t.numerator * (denominator // t.denominator) for t in terms]
    return GeneralizedBernoulli(
        k=k, character=chi, value=from_exponents(n, vector, denominator)
    )


def bkchi_over_2k_valuation(k: int, chi: DirichletCharacter, p: int) -> int:
    """
    min over primes above p of v(B_{k,chi} / 2k), with v(p) = e.

    Raises:
        ValueError: On parity mismatch (B_{k,chi} vanishes identically)
        ArithmeticError: When B_{k,chi} is zero for another reason
    """
    if not is_parity_admissible(k, chi):
        raise ValueError(f"Parity mismatch: B_{{{k},chi}} vanishes for chi = {chi}")
    value = generalized_bernoulli(k, primitive_character(chi)).value * Fraction(1, 2 * k)
    if value.is_zero():
        raise ArithmeticError(f"B_{{{k},chi}} = 0 for chi = {chi}")
    decomposition = prime_decomposition(value.n, p)
    return int(min(decomposition.valuations(value)))


def valuation_table(p: int, moduli: Iterable[int], weights: Iterable[int]) -> List[BernoulliRow]:
    """Rows (p, N, order, k, chi, v) over primitive characters mod each N and admissible k."""
    weights = list(weights)
    rows = []
    for N in moduli:
        for chi in primitive_characters(N):
            for k in weights:
                if k < 1 or not is_parity_admissible(k, chi):
                    continue
                try:
                    valuation = bkchi_over_2k_valuation(k, chi, p)
                except ArithmeticError:
                    logger.info("B_{%d,chi} vanishes for %s", k, chi)
                    valuation = None
                rows.append(
                    BernoulliRow(
                        p=p,
                        N=N,
                        order=chi.image_order,
                        k=k,
                        character=character_text(chi),
                        valuation=valuation,
                    )
                )
    return rows
