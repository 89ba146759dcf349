"""
Tests for exact cyclotomic arithmetic and HNF ideals.
"""

import random
import sys
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

# Add the repository root to the path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.arith.cyclo import (
    cyc_arith,
    extend_ideal,
    from_exponents,
    from_int,
    from_rational,
    ideal_compare,
    ideal_contains,
    ideal_from_generators,
    ideal_generators,
    ideal_product,
    ideal_sum,
    one,
    parse_ideal,
    pi_valuation,
    ring_degree,
    unit_ideal,
    zero,
    zero_ideal,
    zeta_power,
)


def _varpi(n: int, j: int = 1):
    """1 - zeta_n^j."""
    return one(n) - zeta_power(n, j)


def test_roots_of_unity():
    for n in [3, 4, 5, 7, 8, 9, 12]:
        zeta = zeta_power(n, 1)
        assert zeta**n == 1
        assert zeta ** (n + 3) == zeta_power(n, 3)
        assert len(zeta.numerator) == ring_degree(n)
    assert from_exponents(5, [1, 1, 1, 1, 1]).is_zero()
    assert from_exponents(3, [0, 0, 0, 2]) == zeta_power(3, 0) * 2


def test_field_operations():
    x = from_exponents(7, [2, 1])
    y = _varpi(5)
    for value in (x, y):
        assert value * value.inverse() == 1
        assert value / value == 1
    assert (x + 3) - 3 == x
    assert 2 * x == x + x
    assert cyc_arith(x, x, "div").is_one()
    assert cyc_arith(y, y, "sub").is_zero()
    half = from_rational(5, Fraction(1, 2))
    assert (half * 2).is_one()
    assert not half.is_integral()
    assert str(half) == "1/2"


def test_errors():
    with pytest.raises(ZeroDivisionError):
        zero(5).inverse()
    with pytest.raises(ValueError):
        one(5) + one(7)
    with pytest.raises(ValueError):
        cyc_arith(one(5), one(5), "pow")


def test_norm():
    assert _varpi(5).norm() == 5
    assert _varpi(4).norm() == 2
    assert from_int(5, 2).norm() == 16
    assert from_exponents(4, [2, 1]).norm() == 5
    assert from_rational(3, Fraction(1, 2)).norm() == Fraction(1, 4)


def test_lift():
    assert zeta_power(3, 1).lift(6) == zeta_power(6, 2)
    assert _varpi(5).lift(10).norm() == 5
    with pytest.raises(ValueError):
        one(4).lift(6)


def test_ideal_basics():
    five = ideal_from_generators(5, [5])
    assert five.norm == 5**4
    assert ideal_contains(five, 10)
    assert not ideal_contains(five, 1)
    assert unit_ideal(7).is_unit
    assert zero_ideal(7).is_zero

    # HNF lattices are stable under multiplication by zeta
    for g in ideal_generators(ideal_from_generators(7, [from_exponents(7, [2, 1])])):
        assert ideal_contains(ideal_from_generators(7, [from_exponents(7, [2, 1])]), g.times_zeta())


def test_ideal_relations():
    print("🧪 Testing: (1 - zeta_5)^4 = (5)")
    varpi = _varpi(5)
    assert ideal_compare(ideal_from_generators(5, [varpi**4]), ideal_from_generators(5, [5])) == (
        "equal"
    )
    assert ideal_compare(ideal_from_generators(5, [5]), ideal_from_generators(5, [varpi])) == (
        "subset"
    )
    assert ideal_compare(ideal_from_generators(5, [varpi]), ideal_from_generators(5, [5])) == (
        "superset"
    )

    plus = ideal_from_generators(4, [from_exponents(4, [2, 1])])
    minus = ideal_from_generators(4, [from_exponents(4, [2, -1])])
    assert ideal_compare(plus, minus) == "incomparable"
    assert ideal_sum(plus, minus).is_unit
    assert ideal_compare(ideal_product(plus, minus), ideal_from_generators(4, [5])) == "equal"

    with pytest.raises(ValueError):
        ideal_compare(plus, ideal_from_generators(5, [5]))


def test_ideal_norm_is_multiplicative():
    a = ideal_from_generators(12, [from_exponents(12, [1, 1, 1])])
    b = ideal_from_generators(12, [from_exponents(12, [3, 0, 1])])
    assert ideal_product(a, b).norm == a.norm * b.norm


def test_extend_ideal():
    two = ideal_from_generators(5, [2])
    assert extend_ideal(two, 10).norm == 16
    assert extend_ideal(two, 15).norm == 2**8
    assert extend_ideal(ideal_from_generators(5, [_varpi(5)]), 10).norm == 5
    assert extend_ideal(zero_ideal(3), 6).is_zero


def test_ideal_text_form():
    ideal = ideal_from_generators(8, [_varpi(8)])
    assert parse_ideal(str(ideal)) == ideal
    assert str(unit_ideal(1)) == "1; 1"


def test_pi_valuation():
    assert pi_valuation(_varpi(5), 5, 1) == 1
    assert pi_valuation(from_int(5, 25), 5, 1) == 8
    assert pi_valuation(from_rational(5, Fraction(1, 5)), 5, 1) == -4
    assert pi_valuation(zero(5), 5, 1) == float("inf")

    lifted = _varpi(5).lift(25)
    assert pi_valuation(lifted, 5, 2) == 5
    assert pi_valuation(lifted, 5, 1) == 1

    with pytest.raises(ValueError):
        pi_valuation(one(5), 5, 2)


def _random_element(rng: random.Random, n: int):
    while True:
        x = from_exponents(n, [rng.randint(-6, 6) for _ in range(ring_degree(n))])
        if not x.is_zero():
            return x


@pytest.mark.parametrize("p, m", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_pi_valuation_is_additive(p, m):
    rng = random.Random(p * 10 + m)
    n = p**m
    for _ in range(40):
        x, y = _random_element(rng, n), _random_element(rng, n)
        x = x * _varpi(n) ** rng.randint(0, 3)
        assert pi_valuation(x * y, p, m) == pi_valuation(x, p, m) + pi_valuation(y, p, m)
        assert pi_valuation(x / y, p, m) == pi_valuation(x, p, m) - pi_valuation(y, p, m)


def _unit(n: int):
    """(1 - zeta^a) / (1 - zeta) = 1 + zeta + ... + zeta^(a-1) for the least a > 1 prime to n."""
    if n <= 2:
        return from_int(n, -1)
    a = next(a for a in range(2, n + 2) if gcd(a, n) == 1)
    return from_exponents(n, [1] * a)


@pytest.mark.parametrize("n", range(1, 17))
def test_generated_ideal_depends_only_on_the_ideal(n):
    rng = random.Random(n)
    for _ in range(4):
        a = _random_element(rng, n)
        b = _random_element(rng, n) * 3
        ideal = ideal_from_generators(n, [a, b])
        assert ideal_compare(ideal_from_generators(n, [b, a]), ideal) == "equal"
        assert ideal_compare(ideal_from_generators(n, [a, b, a, a + b]), ideal) == "equal"
        assert ideal_compare(ideal_from_generators(n, ideal_generators(ideal)), ideal) == "equal"

        twisted = [a * zeta_power(n, rng.randrange(n)), b * _unit(n)]
        assert ideal_compare(ideal_from_generators(n, twisted), ideal) == "equal"


@pytest.mark.parametrize(
    "n, p", [(3, 2), (3, 5), (3, 7), (4, 3), (4, 5), (4, 7), (6, 5), (6, 7), (7, 2), (7, 3)]
)
def test_root_of_unity_difference_is_prime_to_p(n, p):
    """1 - zeta_n is only divisible by primes dividing n."""
    assert ideal_from_generators(n, [_varpi(n), p**12]).is_unit
