"""
Tests for the primes of Z[zeta_n] above p.
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the repository root to the path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.arith.cyclo import from_int, from_rational, ideal_compare, ideal_from_generators, one
from src.arith.cyclo import zeta_power
from src.arith.primes import PrimeDecomposition, p_adic_valuation, prime_decomposition


@pytest.mark.parametrize(
    "n, p, e, f, g",
    [
        (5, 5, 4, 1, 1),
        (25, 5, 20, 1, 1),
        (6, 7, 1, 1, 2),
        (5, 11, 1, 1, 4),
        (20, 5, 4, 1, 2),
        (7, 2, 1, 3, 2),
        (4, 2, 2, 1, 1),
        (1, 3, 1, 1, 1),
    ],
)
def test_splitting_data(n, p, e, f, g):
    decomposition = PrimeDecomposition(n, p)
    assert (decomposition.e, decomposition.f, decomposition.g) == (e, f, g)
    assert e * f * g == len(one(n).numerator)


def test_valuation_of_p_is_e():
    for n, p in [(5, 5), (20, 5), (6, 7), (7, 2), (12, 2), (9, 3)]:
        decomposition = prime_decomposition(n, p)
        assert decomposition.valuations(from_int(n, p)) == (decomposition.e,) * decomposition.g
        assert decomposition.valuations(from_int(n, p**3)) == (3 * decomposition.e,) * (
            decomposition.g
        )


def test_valuations_of_cyclotomic_units():
    decomposition = prime_decomposition(7, 7)
    assert decomposition.valuation(one(7) - zeta_power(7, 1), 0) == 1
    assert decomposition.valuation(one(7) - zeta_power(7, 3), 0) == 1

    decomposition = prime_decomposition(25, 5)
    assert decomposition.valuation(one(25) - zeta_power(25, 5), 0) == 5

    decomposition = prime_decomposition(5, 5)
    assert decomposition.valuation(from_rational(5, Fraction(2, 25)), 0) == -8
    assert decomposition.valuation(from_int(5, 0), 0) == float("inf")
    assert decomposition.valuation(from_int(5, 125), 0, cap=5) == 5


def test_uniformizers_separate_primes():
    decomposition = prime_decomposition(20, 5)
    for i, pi in enumerate(decomposition.uniformizers):
        expected = tuple(1 if j == i else 0 for j in range(decomposition.g))
        assert decomposition.valuations(pi) == expected


def test_ideal_from_valuations_roundtrip():
    for n, p, exponents in [(20, 5, (1, 3)), (6, 7, (0, 2)), (5, 11, (1, 0, 2, 0)), (9, 3, (4,))]:
        decomposition = prime_decomposition(n, p)
        ideal = decomposition.ideal_from_valuations(exponents)
        assert decomposition.ideal_valuations(ideal) == exponents

    decomposition = prime_decomposition(5, 5)
    varpi_squared = (one(5) - zeta_power(5, 1)) ** 2
    expected = ideal_from_generators(5, [varpi_squared])
    assert ideal_compare(decomposition.ideal_from_valuations([2]), expected) == "equal"
    assert decomposition.ideal_from_valuations([0]).is_unit

    with pytest.raises(ValueError):
        decomposition.ideal_from_valuations([1, 1])


def test_shift_down():
    decomposition = prime_decomposition(20, 5)
    x = decomposition.uniformizers[0] ** 3
    assert decomposition.valuations(decomposition.shift_down(x, 0, 2)) == (1, 0)
    with pytest.raises(ArithmeticError):
        decomposition.shift_down(one(20), 0, 1)


def test_residue_kills_p():
    decomposition = prime_decomposition(6, 7)
    assert decomposition.residue(from_int(6, 7).numerator, 0) == (0,)
    assert decomposition.residue(one(6).numerator, 1) == (1,)


def test_p_adic_valuation():
    assert p_adic_valuation(-24, 2) == 3
    assert p_adic_valuation(7, 5) == 0
    with pytest.raises(ValueError):
        p_adic_valuation(0, 3)


def test_mismatched_ring():
    with pytest.raises(ValueError):
        prime_decomposition(5, 5).valuation(one(10), 0)
