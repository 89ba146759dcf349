"""
Maximal congruence ideals detected on truncated q-expansions.

For a series f with unit constant term the congruence ideal is generated by the coefficients
a_n (n >= 1) together with p^M. For a space spanned by several series the search eliminates
the q-tail inside the span one prime above p at a time, using only multiplications by
elements that are units at that prime.
"""

import logging
import math
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import divisors, factorint

from ..arith.char import char_exponent, inverse
from ..arith.cyclo import (
    CyclotomicNumber,
    extend_ideal,
    from_exponents,
    ideal_compare,
    one,
    pi_valuation,
    zero,
)
from ..arith.primes import PrimeDecomposition, prime_decomposition
from ..models.schemas import CongruenceResult, DirichletCharacter, IdealHNF
from .eisenstein import EisensteinBasisElement, QSeries

logger = logging.getLogger(__name__)


def _clamp(value, cap: int) -> int:
    if value == math.inf:
        return cap
    return int(max(0, min(value, cap)))


def series_congruence_ideal(f: QSeries, p: int, M: int = 12) -> CongruenceResult:
    """
    The ideal (a_1, a_2, ..., p^M) of a single series with unit constant term.

    Args:
        f: Truncated q-expansion
        p: The prime
        M: p-adic precision

    Returns:
        Ideal, valuations per prime above p and the stabilization index
    """
    decomposition = prime_decomposition(f.n, p)
    a0 = f.coeffs[0]
    if a0.is_zero() or any(v != 0 for v in decomposition.valuations(a0)):
        raise ValueError("Constant term must be a p-adic unit")
    cap = decomposition.e * M
    Q = f.precision
    valuations, first = [], []
    notes = []
    for i in range(decomposition.g):
        best, where = cap, 0
        for index in range(1, Q + 1):
            c = f.coeffs[index]
            if c.is_zero():
                continue
            value = decomposition.valuation(c, i, cap=best)
            if value < best:
                best, where = value, index
            if best <= 0:
                break
        if best < 0:
            notes.append(f"coefficient a_{where} is not p-integral")
        valuations.append(_clamp(best, cap))
        first.append(where)

    index = max(first) if first else 0
    trivial = all(s == cap for s in valuations)
    return CongruenceResult(
        ideal=decomposition.ideal_from_valuations(valuations),
        valuations=tuple(valuations),
        stabilization_index=index,
        q_precision=Q,
        p_precision=M,
        confirmed=2 * index <= Q,
        trivial_to_precision=trivial,
        witness={"series": "input"},
        notes=notes,
    )


def _integral(series: QSeries) -> List[CyclotomicNumber]:
    common = 1
    for c in series.coeffs:
        common = lcm(common, c.denominator)
    return [c * common for c in series.coeffs]


class _LocalSearch:
    """Division-free elimination for one prime above p."""

    def __init__(self, decomposition: PrimeDecomposition, index: int):
        self.decomposition = decomposition
        self.index = index
        self.rows: List[Tuple[int, List[CyclotomicNumber], List[CyclotomicNumber]]] = []

    def _valuation(self, x: CyclotomicNumber, cap=None):
        return self.decomposition.valuation(x, self.index, cap=cap)

    @staticmethod
    def _combine(a, u, b, w):
        """a * u - b * w, entrywise."""
        return [a * x - b * y for x, y in zip(u, w)]

    def reduce(self, tail, combo):
        for column, row, row_combo in self.rows:
            entry = tail[column]
            if not entry.is_zero():
                pivot = row[column]
                tail = self._combine(pivot, tail, entry, row)
                combo = self._combine(pivot, combo, entry, row_combo)
        return tail, combo

    def insert(self, tail, combo) -> None:
        tail, combo = self.reduce(tail, combo)
        best, column = math.inf, None
        for position, entry in enumerate(tail):
            if entry.is_zero():
                continue
            value = self._valuation(entry, cap=best)
            if value < best:
                best, column = value, position
            if best <= 0:
                break
        if column is None:
            return
        if best > 0:
            shift = int(best)
            tail = [self.decomposition.shift_down(x, self.index, shift) for x in tail]
            beta = self.decomposition.beta(self.index)
            factor = beta**shift * Fraction(1, self.decomposition.p**shift)
            combo = [x * factor for x in combo]
        pivot = tail[column]
        updated = []
        for other_column, row, row_combo in self.rows:
            entry = row[column]
            if not entry.is_zero():
                row = self._combine(pivot, row, entry, tail)
                row_combo = self._combine(pivot, row_combo, entry, combo)
            updated.append((other_column, row, row_combo))
        updated.append((column, tail, combo))
        self.rows = updated

    @property
    def pivot_columns(self) -> List[int]:
        return [column for column, _, _ in self.rows]


def _combo_vector(size: int, entries: Dict[int, CyclotomicNumber], n: int) -> List:
    vector = [zero(n) for _ in range(size)]
    for position, value in entries.items():
        vector[position] = value
    return vector


def max_congruence_search(
    basis: Sequence[Union[EisensteinBasisElement, QSeries]],
    p: int,
    target: Optional[IdealHNF] = None,
    M: int = 12,
) -> CongruenceResult:
    """
    Largest ideal I for which some f in the span has f = a_0 mod I (a_0 != 0 mod I).

    Args:
        basis: Series spanning the space, all over the same Z[zeta_n] and precision
        p: The prime
        target: Optional ideal to compare against
        M: p-adic precision; valuations are capped at e * M

    Returns:
        The detected ideal with stabilization index and witness
    """
    if not basis:
        raise ValueError("Empty basis")
    labels, series = [], []
    for position, element in enumerate(basis):
        if isinstance(element, EisensteinBasisElement):
            if element.k == 0:
                raise ValueError("Weight 0 is excluded")
            labels.append(element.label)
            series.append(element.series)
        else:
            labels.append(f"f{position}")
            series.append(element)
    n, Q = series[0].n, series[0].precision
    if any(s.n != n or s.precision != Q for s in series):
        raise ValueError("Basis series must share coefficient ring and precision")

    coefficients = [_integral(s) for s in series]
    lead = next((j for j, c in enumerate(coefficients) if not c[0].is_zero()), None)
    if lead is None:
        raise ValueError("No series in the span has a nonzero constant term")
    c1 = coefficients[lead][0]
    size = len(series)

    decomposition = prime_decomposition(n, p)
    cap = decomposition.e * M
    valuations, witness_rank, last_index = [], [], 0
    per_prime = []
    for i in range(decomposition.g):
        search = _LocalSearch(decomposition, i)
        for j, c in enumerate(coefficients):
            if j == lead:
                continue
            tail = [c1 * x - c[0] * y for x, y in zip(c[1:], coefficients[lead][1:])]
            combo = _combo_vector(size, {j: c1, lead: -c[0]}, n)
            search.insert(tail, combo)
        start = _combo_vector(size, {lead: one(n)}, n)
        tail, combo = search.reduce(coefficients[lead][1:], start)

        offset = decomposition.valuation(c1, i)
        best, where = math.inf, 0
        for position, entry in enumerate(tail):
            if entry.is_zero():
                continue
            value = decomposition.valuation(entry, i, cap=min(best, cap + offset))
            if value < best:
                best, where = value, position + 1
        s = _clamp(best - offset if best != math.inf else cap, cap)
        valuations.append(s)
        pivots = [column + 1 for column in search.pivot_columns]
        last_index = max([last_index, where] + pivots)
        witness_rank.append(len(pivots))
        per_prime.append(
            {
                "prime": i,
                "valuation": s,
                "coefficients": {
                    labels[j]: str(value) for j, value in enumerate(combo) if not value.is_zero()
                },
            }
        )

    ideal = decomposition.ideal_from_valuations(valuations)
    notes = []
    if target is not None:
        common = lcm(ideal.n, target.n)
        relation = ideal_compare(extend_ideal(ideal, common), extend_ideal(target, common))
        notes.append(f"relation to target: {relation}")
        logger.info("Detected ideal vs target: %s", relation)
    return CongruenceResult(
        ideal=ideal,
        valuations=tuple(valuations),
        stabilization_index=last_index,
        q_precision=Q,
        p_precision=M,
        confirmed=2 * last_index <= Q,
        trivial_to_precision=all(s == cap for s in valuations),
        witness={"lead": labels[lead], "rank": max(witness_rank), "per_prime": per_prime},
        notes=notes,
    )


def verify_an_factorization(
    k: int, chi: DirichletCharacter, p: int, Q: int = 200
) -> Tuple[bool, List[str]]:
    """
    Check a_n = (chi^-1(n') l^(v(k-1)) - 1) sigma_{k-1,chi}(n') for n = l^v n' and that a_n
    lies in the maximal ideal, where a_n = sum chi^-1(n/d) d^(k-1) - sum chi(d) d^(k-1).

    Args:
        k: Weight
        chi: Primitive character of prime conductor l != p and p-power order
        p: The prime
        Q: Last index checked

    Returns:
        (all good, list of violations)
    """
    ell = chi.conductor
    if not chi.is_primitive or len(factorint(ell)) != 1 or factorint(ell).get(ell) != 1:
        raise ValueError(f"{chi} must be primitive of prime conductor")
    if ell == p:
        raise ValueError("Conductor must differ from p")
    order_factors = factorint(chi.image_order)
    if set(order_factors) - {p}:
        raise ValueError(f"Image order {chi.image_order} is not a power of {p}")
    n = chi.image_order
    w = order_factors.get(p, 0)
    chi_inv = inverse(chi)
    violations = []
    for index in range(1, Q + 1):
        direct = [0] * n
        for d in divisors(index):
            e_inv = char_exponent(chi_inv, index // d)
            if e_inv is not None:
                direct[e_inv] += d ** (k - 1)
            e = char_exponent(chi, d)
            if e is not None:
                direct[e] -= d ** (k - 1)
        a_n = from_exponents(n, direct)

        v, rest = 0, index
        while rest % ell == 0:
            rest //= ell
            v += 1
        closed = [0] * n
        closed[char_exponent(chi_inv, rest)] += ell ** (v * (k - 1))
        closed[0] -= 1
        sigma = [0] * n
        for d in divisors(rest):
            sigma[char_exponent(chi, d)] += d ** (k - 1)
        factorized = from_exponents(n, closed) * from_exponents(n, sigma)

        if a_n != factorized:
            violations.append(f"a_{index}: direct {a_n} != factorized {factorized}")
            continue
        if w and not a_n.is_zero() and pi_valuation(a_n, p, w) < 1:
            violations.append(f"a_{index} = {a_n} is not in the maximal ideal")
        elif not w and not a_n.is_zero() and any(x % p for x in a_n.numerator):
            violations.append(f"a_{index} = {a_n} is not divisible by {p}")
    return not violations, violations
