"""
Primes of Z[zeta_n] above a rational prime p.

With n = p^w * m and p prime to m, p splits into g = phi(m)/f primes of residue degree
f = ord_m(p) and ramification index e = phi(p^w). Each prime is the kernel of a residue map
Z[zeta_n] -> F_p[t]/(h_i), one per monic factor h_i of Phi_m mod p.
"""

import logging
import math
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

from sympy import Poly, Symbol, cyclotomic_poly, multiplicity, n_order

from ..models.schemas import IdealHNF
from .cyclo import (
    CyclotomicNumber,
    _new,
    from_exponents,
    from_int,
    ideal_from_generators,
    one,
    ring_degree,
    unit_ideal,
    zeta_power,
)

logger = logging.getLogger(__name__)

Valuation = Union[int, float]


def p_adic_valuation(value: int, p: int) -> int:
    """v_p of a nonzero integer."""
    if value == 0:
        raise ValueError("v_p(0) is infinite")
    return int(multiplicity(p, abs(value)))


class PrimeDecomposition:
    """The primes of Z[zeta_n] above p, with residue maps, valuations and uniformizers."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        w, m = 0, n
        while m % p == 0:
            m //= p
            w += 1
        self.w = w
        self.m = m
        self.e = (p - 1) * p ** (w - 1) if w >= 1 else 1
        self.f = int(n_order(p, m)) if m > 1 else 1

        t = Symbol("t")
        _, factors = Poly(cyclotomic_poly(m, t), t, modulus=p).factor_list()
        monic = []
        for factor, _mult in factors:
            coeffs = [int(c) % p for c in reversed(factor.all_coeffs())]
            lead_inv = pow(coeffs[-1], -1, p)
            monic.append(tuple(c * lead_inv % p for c in coeffs))
        self.factors: List[Tuple[int, ...]] = sorted(monic)
        self.g = len(self.factors)

        self._alpha = pow(p**w, -1, m) if m > 1 else 0
        self._tables = [self._power_table(h) for h in self.factors]

        self._varpi = one(n) - zeta_power(n, m) if w >= 1 else None
        self._lifts = [self._lift_factor(h) for h in self.factors]
        self._betas = [self._beta(i) for i in range(self.g)]
        self.uniformizers = [self._uniformizer(i) for i in range(self.g)]
        logger.debug("Z[zeta_%d] over %d: e=%d f=%d g=%d", n, p, self.e, self.f, self.g)

    # construction

    def _power_table(self, h: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        """t^k mod (p, h) for 0 <= k < m."""
        f = len(h) - 1
        row = [0] * f
        row[0] = 1
        table = []
        for _ in range(max(self.m, 1)):
            table.append(tuple(row))
            top = row[-1]
            row = [0] + row[:-1]
            if top:
                row = [(r - top * c) % self.p for r, c in zip(row, h)]
        return table

    def _lift_factor(self, h: Tuple[int, ...]) -> CyclotomicNumber:
        """h(zeta_m) in Z[zeta_n], zeta_m = zeta_n^(p^w)."""
        step = self.p**self.w
        vector = [0] * self.n
        for k, c in enumerate(h):
            vector[(k * step) % self.n] += c
        return from_exponents(self.n, vector)

    def _beta(self, i: int) -> CyclotomicNumber:
        """Element of 𝔓_i^(e-1) * prod_{j != i} 𝔓_j^e, a unit away from those primes."""
        beta = one(self.n)
        if self._varpi is not None:
            beta = beta * self._varpi ** (self.e - 1)
        for j, lift in enumerate(self._lifts):
            if j != i:
                beta = beta * lift
        return beta

    def _uniformizer(self, i: int) -> CyclotomicNumber:
        if self.g == 1:
            return self._varpi if self.e >= 2 else from_int(self.n, self.p)
        lift = self._lifts[i]
        if self.e >= 2:
            return lift + self._varpi
        if self.valuation(lift, i, cap=2) == 1:
            return lift
        return lift + self.p

    # residue maps

    def residue(self, numerator: Sequence[int], i: int) -> Tuple[int, ...]:
        """Image of an integral element (power-basis numerator) in F_p[t]/(h_i)."""
        table = self._tables[i]
        f = len(self.factors[i]) - 1
        out = [0] * f
        for j, a in enumerate(numerator):
            if a:
                for k, c in enumerate(table[(self._alpha * j) % self.m]):
                    if c:
                        out[k] += a * c
        return tuple(c % self.p for c in out)

    # valuations

    def valuation(self, x: CyclotomicNumber, i: int, cap: Valuation = None) -> Valuation:
        """
        v_{𝔓_i}(x), normalized so that v(p) = e.

        Args:
            x: Element of Q(zeta_n)
            i: Index of the prime
            cap: Optional ceiling; the result is min(v, cap)

        Returns:
            The valuation, or math.inf for x = 0
        """
        if x.n != self.n:
            raise ValueError(f"Element of Z[zeta_{x.n}] passed to primes of Z[zeta_{self.n}]")
        if x.is_zero():
            return math.inf if cap is None else cap
        shift = -self.e * p_adic_valuation(x.denominator, self.p) if x.denominator > 1 else 0
        num = list(x.numerator)
        content = min(p_adic_valuation(a, self.p) for a in num if a)
        if content:
            scale = self.p**content
            num = [a // scale for a in num]
        value = content * self.e
        limit = None if cap is None else cap - shift
        beta = self._betas[i]
        while (limit is None or value < limit) and not any(self.residue(num, i)):
            product = (_new(self.n, num, 1) * beta).numerator
            if any(c % self.p for c in product):
                raise ArithmeticError("Inexact division while extracting a uniformizer")
            num = [c // self.p for c in product]
            value += 1
        result = value + shift
        return result if cap is None else min(result, cap)

    def valuations(self, x: CyclotomicNumber, cap: Valuation = None) -> Tuple[Valuation, ...]:
        return tuple(self.valuation(x, i, cap) for i in range(self.g))

    def beta(self, i: int) -> CyclotomicNumber:
        """Multiplier with x * beta / p integral whenever x lies in the i-th prime."""
        return self._betas[i]

    def shift_down(self, x: CyclotomicNumber, i: int, t: int) -> CyclotomicNumber:
        """x * beta_i^t / p^t, exact when v_{𝔓_i}(x) >= t and x is integral."""
        if t <= 0:
            return x
        num = list(x.numerator)
        beta = self._betas[i]
        for _ in range(t):
            num = list((_new(self.n, num, 1) * beta).numerator)
        scale = self.p**t
        if any(c % scale for c in num):
            raise ArithmeticError("Element is not divisible by the requested power")
        return _new(self.n, [c // scale for c in num], 1)

    # ideals

    def ideal_from_valuations(self, exponents: Sequence[int]) -> IdealHNF:
        """prod_i 𝔓_i^{s_i}, generated by p^C and prod_i pi_i^{s_i} with C = max ceil(s_i/e)."""
        if len(exponents) != self.g:
            raise ValueError(f"Expected {self.g} exponents, got {len(exponents)}")
        if any(s < 0 for s in exponents):
            raise ValueError("Exponents must be non-negative")
        if not any(exponents):
            return unit_ideal(self.n)
        top = max(-(-s // self.e) for s in exponents)
        modulus = self.p**top
        generator = one(self.n)
        for pi, s in zip(self.uniformizers, exponents):
            for _ in range(s):
                generator = (generator * pi).reduce_mod(modulus)
        return ideal_from_generators(self.n, [from_int(self.n, modulus), generator])

    def ideal_valuations(self, ideal: IdealHNF) -> Tuple[Valuation, ...]:
        """v_{𝔓_i}(I) = min over the HNF rows."""
        if ideal.n != self.n:
            raise ValueError("Ideal lives in a different ring")
        if ideal.is_zero:
            return tuple(math.inf for _ in range(self.g))
        rows = [_new(self.n, row, 1) for row in ideal.basis]
        values = []
        for i in range(self.g):
            best: Valuation = math.inf
            for row in rows:
                if not row.is_zero():
                    best = min(best, self.valuation(row, i, cap=best))
            values.append(best)
        return tuple(values)


@lru_cache(maxsize=None)
def prime_decomposition(n: int, p: int) -> PrimeDecomposition:
    """Cached decomposition of p in Z[zeta_n]."""
    if ring_degree(n) < 1 or p < 2:
        raise ValueError(f"Invalid ring or prime: n={n}, p={p}")
    return PrimeDecomposition(n, p)
