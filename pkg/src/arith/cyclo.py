"""
Exact arithmetic in Z[zeta_n] and Q(zeta_n), and integral ideals as Hermite normal form lattices.

Elements are stored in the power basis {1, zeta, ..., zeta^(phi(n)-1)} modulo Phi_n with a common
positive integer denominator. Ideals are the lattices spanned by g * zeta^j over their generators.
"""

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, List, Literal, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import Matrix, Poly, QQ, Rational, Symbol, cyclotomic_poly, ilcm, resultant, totient
from sympy.matrices.normalforms import hermite_normal_form

from ..models.schemas import IdealHNF, IdealRelation

_x = Symbol("x")

Scalar = Union[int, Fraction]


@lru_cache(maxsize=None)
def ring_degree(n: int) -> int:
    """Degree phi(n) of Z[zeta_n] over Z."""
    if n < 1:
        raise ValueError(f"Cyclotomic conductor must be positive, got {n}")
    return int(totient(n))


@lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> Tuple[int, ...]:
    """Coefficients of Phi_n, constant term first."""
    poly = cyclotomic_poly(n, _x, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def power_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Power-basis coordinates of zeta_n^j for 0 <= j < n."""
    d = ring_degree(n)
    phi = cyclotomic_coefficients(n)
    row = [0] * d
    row[0] = 1
    table = []
    for _ in range(n):
        table.append(tuple(row))
        top = row[-1]
        row = [0] + row[:-1]
        if top:
            for i in range(d):
                row[i] -= top * phi[i]
    return tuple(table)


def _fold(n: int, coeffs: Sequence[int]) -> List[int]:
    """Reduce sum c_j zeta_n^j (any j >= 0) to power-basis coordinates."""
    d = ring_degree(n)
    table = power_table(n)
    out = [0] * d
    for j, c in enumerate(coeffs):
        if not c:
            continue
        if j < d:
            out[j] += c
            continue
        for i, t in enumerate(table[j % n]):
            if t:
                out[i] += c * t
    return out


class CyclotomicNumber(BaseModel):
    """Exact element of Q(zeta_n): numerator in the power basis over a positive denominator."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Conductor of the ambient ring")
    numerator: Tuple[int, ...] = Field(..., description="Power-basis coefficients, length phi(n)")
    denominator: int = Field(1, ge=1, description="Common positive denominator")

    @model_validator(mode="after")
    def _check_shape(self) -> "CyclotomicNumber":
        if len(self.numerator) != ring_degree(self.n):
            raise ValueError(
                f"Expected {ring_degree(self.n)} coefficients for n={self.n}, "
                f"got {len(self.numerator)}"
            )
        content = reduce(gcd, self.numerator, self.denominator)
        if content != 1:
            raise ValueError("Numerator and denominator must be coprime")
        return self

    # construction helpers

    def _same_ring(self, other: "CyclotomicNumber") -> None:
        if other.n != self.n:
            raise ValueError(f"Mismatched ambient rings: Z[zeta_{self.n}] vs Z[zeta_{other.n}]")

    def _coerce(self, other: object) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            self._same_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return from_rational(self.n, other)
        raise TypeError(f"Cannot combine CyclotomicNumber with {type(other).__name__}")

    # predicates

    def is_zero(self) -> bool:
        return not any(self.numerator)

    def is_one(self) -> bool:
        return self.denominator == 1 and self.numerator == one(self.n).numerator

    def is_integral(self) -> bool:
        return self.denominator == 1

    def is_rational(self) -> bool:
        return not any(self.numerator[1:])

    # arithmetic

    def __add__(self, other: object) -> "CyclotomicNumber":
        b = self._coerce(other)
        da, db = self.denominator, b.denominator
        num = [x * db + y * da for x, y in zip(self.numerator, b.numerator)]
        return _new(self.n, num, self.denominator * b.denominator)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return _new(self.n, [-c for c in self.numerator], self.denominator)

    def __sub__(self, other: object) -> "CyclotomicNumber":
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> "CyclotomicNumber":
        return self._coerce(other) - self

    def __mul__(self, other: object) -> "CyclotomicNumber":
        if isinstance(other, int):
            return _new(self.n, [c * other for c in self.numerator], self.denominator)
        b = self._coerce(other)
        conv = [0] * (2 * len(self.numerator) - 1)
        for i, x in enumerate(self.numerator):
            if x:
                for j, y in enumerate(b.numerator):
                    if y:
                        conv[i + j] += x * y
        return _new(self.n, _fold(self.n, conv), self.denominator * b.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "CyclotomicNumber":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: object) -> "CyclotomicNumber":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "CyclotomicNumber":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = one(self.n), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = from_rational(self.n, other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return (self.n, self.numerator, self.denominator) == (
            other.n,
            other.numerator,
            other.denominator,
        )

    def __hash__(self) -> int:
        return hash((self.n, self.numerator, self.denominator))

    def inverse(self) -> "CyclotomicNumber":
        """Inverse via the extended polynomial gcd with Phi_n over QQ."""
        if self.is_zero():
            raise ZeroDivisionError(f"Division by zero in Q(zeta_{self.n})")
        if len(self.numerator) == 1:
            value = Fraction(self.denominator, self.numerator[0])
            return from_rational(self.n, value)
        f = Poly(list(reversed(self.numerator)), _x, domain=QQ)
        phi = Poly(list(reversed(cyclotomic_coefficients(self.n))), _x, domain=QQ)
        inv = f.invert(phi)
        coeffs = [Rational(c) for c in reversed(inv.all_coeffs())]
        coeffs += [Rational(0)] * (len(self.numerator) - len(coeffs))
        common = int(reduce(ilcm, (c.q for c in coeffs), 1))
        num = [int(c.p) * (common // int(c.q)) for c in coeffs]
        return _new(self.n, [c * self.denominator for c in num], common)

    def times_zeta(self, power: int = 1) -> "CyclotomicNumber":
        """Multiply by zeta_n^power."""
        power %= self.n
        shifted = [0] * power + list(self.numerator)
        return _new(self.n, _fold(self.n, shifted), self.denominator)

    def lift(self, L: int) -> "CyclotomicNumber":
        """Image under Z[zeta_n] -> Z[zeta_L], zeta_n -> zeta_L^(L/n)."""
        if L % self.n:
            raise ValueError(f"Cannot lift Z[zeta_{self.n}] into Z[zeta_{L}]")
        if L == self.n:
            return self
        step = L // self.n
        vector = [0] * L
        for j, c in enumerate(self.numerator):
            vector[j * step] += c
        return _new(L, _fold(L, vector), self.denominator)

    def norm(self) -> Fraction:
        """Absolute norm N_{Q(zeta_n)/Q}, as the resultant of Phi_n and the numerator."""
        if self.is_zero():
            return Fraction(0)
        if len(self.numerator) == 1:
            return Fraction(self.numerator[0], self.denominator)
        f = Poly(list(reversed(self.numerator)), _x)
        phi = Poly(list(reversed(cyclotomic_coefficients(self.n))), _x)
        return Fraction(int(resultant(phi, f)), self.denominator ** len(self.numerator))

    def reduce_mod(self, modulus: int) -> "CyclotomicNumber":
        """Reduce integral coefficients into [0, modulus)."""
        if not self.is_integral():
            raise ValueError("Only integral elements can be reduced coefficient-wise")
        return _new(self.n, [c % modulus for c in self.numerator], 1)

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.numerator):
            if not c:
                continue
            if j == 0:
                body = str(abs(c))
            else:
                power = "z" if j == 1 else f"z^{j}"
                body = power if abs(c) == 1 else f"{abs(c)}{power}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f"{sign}{body}"
        if self.denominator != 1:
            if len(terms) > 1:
                text = f"({text})"
            text = f"{text}/{self.denominator}"
        return text


def _new(n: int, numerator: Sequence[int], denominator: int) -> CyclotomicNumber:
    """Normalize and build without re-running validation."""
    if denominator == 0:
        raise ZeroDivisionError("Zero denominator")
    if denominator < 0:
        numerator = [-c for c in numerator]
        denominator = -denominator
    content = reduce(gcd, numerator, denominator)
    if content > 1:
        numerator = [c // content for c in numerator]
        denominator //= content
    return CyclotomicNumber.model_construct(
        n=n, numerator=tuple(numerator), denominator=denominator
    )


def from_int(n: int, value: int) -> CyclotomicNumber:
    return _new(n, [value] + [0] * (ring_degree(n) - 1), 1)


def from_rational(n: int, value: Scalar) -> CyclotomicNumber:
    value = Fraction(value)
    return _new(n, [value.numerator] + [0] * (ring_degree(n) - 1), value.denominator)


def zero(n: int) -> CyclotomicNumber:
    return from_int(n, 0)


def one(n: int) -> CyclotomicNumber:
    return from_int(n, 1)


def zeta_power(n: int, j: int) -> CyclotomicNumber:
    """zeta_n^j."""
    return _new(n, list(power_table(n)[j % n]), 1)


def from_exponents(n: int, vector: Sequence[int], denominator: int = 1) -> CyclotomicNumber:
    """sum_j vector[j] * zeta_n^j, for a vector of any length."""
    return _new(n, _fold(n, vector), denominator)


def cyc_arith(
    a: CyclotomicNumber,
    b: CyclotomicNumber,
    op: Literal["add", "sub", "mul", "div"],
) -> CyclotomicNumber:
    """Exact ring operation on two elements of the same Q(zeta_n)."""
    a._same_ring(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"Unknown operation: {op}")


# Ideals


def _hnf_rows(d: int, vectors: Iterable[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Columns of the Hermite normal form of the lattice spanned by vectors, as rows."""
    columns = [list(v) for v in vectors if any(v)]
    if not columns:
        return ()
    A = Matrix(d, len(columns), lambda i, j: columns[j][i])
    W = hermite_normal_form(A)
    return tuple(tuple(int(W[i, j]) for i in range(d)) for j in range(W.shape[1]))


def _ideal(n: int, basis: Tuple[Tuple[int, ...], ...]) -> IdealHNF:
    d = ring_degree(n)
    norm = 0
    if len(basis) == d:
        norm = 1
        for i, row in enumerate(basis):
            norm *= row[i]
    return IdealHNF(n=n, basis=basis, norm=norm)


def _integral_vector(n: int, x: Union[CyclotomicNumber, int]) -> Tuple[int, ...]:
    if isinstance(x, int):
        return from_int(n, x).numerator
    if x.n != n:
        raise ValueError(f"Mismatched ambient rings: Z[zeta_{n}] vs Z[zeta_{x.n}]")
    if not x.is_integral():
        raise ValueError("Ideal generators must be integral")
    return x.numerator


def ideal_from_generators(
    n: int, gens: Sequence[Union[CyclotomicNumber, int]]
) -> IdealHNF:
    """HNF of the lattice spanned by g * zeta^j, g in gens, 0 <= j < phi(n)."""
    if not gens:
        raise ValueError("At least one generator is required")
    d = ring_degree(n)
    vectors = []
    for g in gens:
        vector = _integral_vector(n, g)
        if not any(vector):
            continue
        element = _new(n, vector, 1)
        for _ in range(d):
            vectors.append(element.numerator)
            element = element.times_zeta()
    return _ideal(n, _hnf_rows(d, vectors))


def ideal_from_lattice(n: int, vectors: Iterable[Sequence[int]]) -> IdealHNF:
    """HNF of a Z-lattice already known to be an ideal (stable under zeta)."""
    return _ideal(n, _hnf_rows(ring_degree(n), vectors))


def unit_ideal(n: int) -> IdealHNF:
    return ideal_from_generators(n, [1])


def zero_ideal(n: int) -> IdealHNF:
    return IdealHNF(n=n, basis=(), norm=0)


def ideal_generators(ideal: IdealHNF) -> List[CyclotomicNumber]:
    """The HNF rows as ring elements."""
    return [_new(ideal.n, row, 1) for row in ideal.basis]


def ideal_contains(ideal: IdealHNF, x: Union[CyclotomicNumber, int]) -> bool:
    """Membership by back-substitution through the triangular HNF rows."""
    if isinstance(x, CyclotomicNumber):
        if x.n != ideal.n:
            raise ValueError(f"Mismatched ambient rings: Z[zeta_{ideal.n}] vs Z[zeta_{x.n}]")
        if not x.is_integral():
            return False
    vector = list(_integral_vector(ideal.n, x))
    if ideal.is_zero:
        return not any(vector)
    d = len(vector)
    if len(ideal.basis) != d:
        raise ValueError("Membership needs a full-rank lattice")
    for i in range(d - 1, -1, -1):
        if not vector[i]:
            continue
        row = ideal.basis[i]
        q, r = divmod(vector[i], row[i])
        if r:
            return False
        for j in range(i + 1):
            vector[j] -= q * row[j]
    return not any(vector)


def ideal_compare(first: IdealHNF, second: IdealHNF) -> IdealRelation:
    """'subset' means first is contained in second."""
    if first.n != second.n:
        raise ValueError(f"Mismatched ambient rings: Z[zeta_{first.n}] vs Z[zeta_{second.n}]")
    if first.basis == second.basis:
        return "equal"
    first_in_second = all(ideal_contains(second, _new(first.n, row, 1)) for row in first.basis)
    second_in_first = all(ideal_contains(first, _new(second.n, row, 1)) for row in second.basis)
    if first_in_second and second_in_first:
        return "equal"
    if first_in_second:
        return "subset"
    if second_in_first:
        return "superset"
    return "incomparable"


def ideal_sum(first: IdealHNF, second: IdealHNF) -> IdealHNF:
    if first.n != second.n:
        raise ValueError("Mismatched ambient rings")
    return ideal_from_lattice(first.n, list(first.basis) + list(second.basis))


def ideal_product(first: IdealHNF, second: IdealHNF) -> IdealHNF:
    if first.n != second.n:
        raise ValueError("Mismatched ambient rings")
    products = [
        (a * b).numerator for a in ideal_generators(first) for b in ideal_generators(second)
    ]
    return ideal_from_lattice(first.n, products)


def extend_ideal(ideal: IdealHNF, L: int) -> IdealHNF:
    """The ideal of Z[zeta_L] generated by the image of the ideal."""
    if L == ideal.n:
        return ideal
    if ideal.is_zero:
        return zero_ideal(L)
    return ideal_from_generators(L, [g.lift(L) for g in ideal_generators(ideal)])


def parse_ideal(text: str) -> IdealHNF:
    """Inverse of str(IdealHNF): 'n; r1 | r2 | ...'."""
    head, _, body = text.partition(";")
    n = int(head.strip())
    rows = tuple(
        tuple(int(c) for c in chunk.split()) for chunk in body.split("|") if chunk.strip()
    )
    return _ideal(n, rows)


def pi_valuation(x: CyclotomicNumber, p: int, m: int) -> Union[int, float]:
    """
    Largest e with x in (varpi^e), varpi = 1 - zeta_{p^m}.

    Args:
        x: Element of Q(zeta_n) with p^m dividing n; denominators allowed
        p: The prime
        m: Level of the uniformizer

    Returns:
        The valuation, or math.inf for x = 0
    """
    from .primes import prime_decomposition

    decomposition = prime_decomposition(x.n, p)
    if m < 1 or decomposition.w < m:
        raise ValueError(f"Z[zeta_{x.n}] has no zeta_{p}^{m}")
    scale = p ** (decomposition.w - m)
    values = decomposition.valuations(x)
    return min(v if v == float("inf") else v // scale for v in values)
