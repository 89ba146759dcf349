"""
Tests for congruence ideals read off q-expansions.
"""

import sys
from pathlib import Path

import pytest

# Add the repository root to the path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.arith.char import character_of_order, parse_character, trivial_character
from src.arith.cyclo import ideal_compare, ideal_from_generators, one, zeta_power
from src.arith.primes import p_adic_valuation
from src.modular.congruence import (
    max_congruence_search,
    series_congruence_ideal,
    verify_an_factorization,
)
from src.modular.eisenstein import (
    QSeries,
    basis_enumeration,
    eisenstein_normalized,
    eisenstein_qexp,
    level_one_basis,
)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_level_one_denominators(p):
    """(p - 1) | k gives the ideal (p^(v_p(k) + 1)) from the first coefficient on."""
    for k in range(p - 1, 41, p - 1):
        f = eisenstein_normalized(k, trivial_character(1), 40)
        result = series_congruence_ideal(f, p)
        expected = p ** (p_adic_valuation(k, p) + 1)
        assert ideal_compare(result.ideal, ideal_from_generators(1, [expected])) == "equal"
        assert result.stabilization_index <= 20
        assert result.confirmed
        assert not result.trivial_to_precision


def test_level_one_at_two():
    expected = {2: 8, 4: 16, 6: 8, 8: 32}
    for k, modulus in expected.items():
        f = eisenstein_normalized(k, trivial_character(1), 40)
        result = series_congruence_ideal(f, 2)
        assert result.valuations == (p_adic_valuation(modulus, 2),)


def test_no_congruence_when_p_minus_one_does_not_divide_k():
    f = eisenstein_normalized(4, trivial_character(1), 40)
    result = series_congruence_ideal(f, 7)
    assert result.ideal.is_unit
    assert result.valuations == (0,)


def test_non_unit_constant_term():
    f = eisenstein_normalized(12, trivial_character(1), 10)
    with pytest.raises(ValueError):
        series_congruence_ideal(f, 691)


def test_precision_cap():
    f = eisenstein_normalized(4, trivial_character(1), 10)
    result = series_congruence_ideal(f.scale(0) + f.dilate(11), 5, M=3)
    assert result.trivial_to_precision
    assert result.valuations == (3,)


def test_search_matches_single_series():
    basis = level_one_basis(4, 40)
    result = max_congruence_search(basis, 5)
    assert result.valuations == (1,)
    assert result.witness["lead"] == basis[0].label


def test_order_five_character():
    print("🧪 Testing: chi of order 5 modulo 11 at p = 5")
    chi = character_of_order(11, 5)
    varpi = ideal_from_generators(5, [one(5) - zeta_power(5, 1)])

    found = max_congruence_search(basis_enumeration(4, 11, chi, 40), 5, target=varpi)
    assert ideal_compare(found.ideal, varpi) == "equal"
    assert found.notes == ["relation to target: equal"]

    found = max_congruence_search(basis_enumeration(2, 11, chi, 40), 5)
    assert found.ideal.is_unit


def test_search_errors():
    with pytest.raises(ValueError):
        max_congruence_search([], 5)
    chi = parse_character("3:2:[1]")
    with pytest.raises(ValueError):
        max_congruence_search([eisenstein_qexp(1, trivial_character(1), chi, 1, 10)], 3)
    mixed = [
        eisenstein_normalized(4, trivial_character(1), 10),
        eisenstein_normalized(1, chi, 10),
    ]
    with pytest.raises(ValueError):
        max_congruence_search(mixed, 3)


@pytest.mark.parametrize("ell, p", [(11, 5), (29, 7)])
@pytest.mark.parametrize("k", [2, 4])
def test_an_factorization(ell, p, k):
    chi = character_of_order(ell, p)
    ok, violations = verify_an_factorization(k, chi, p, Q=500)
    assert ok, violations[:3]


def test_an_factorization_rejects_bad_characters():
    with pytest.raises(ValueError):
        verify_an_factorization(2, parse_character("7:6:[1]"), 5, Q=10)
    with pytest.raises(ValueError):
        verify_an_factorization(2, parse_character("5:2:[1]"), 5, Q=10)


def _truncate(f, Q):
    return QSeries(n=f.n, coeffs=f.coeffs[: Q + 1])


@pytest.mark.parametrize(
    "text, k, p", [("trivial", 12, 5), ("trivial", 8, 2), ("5:2:[1]", 2, 3), ("5:2:[1]", 4, 3)]
)
def test_ideal_shrinks_with_precision(text, k, p):
    f = eisenstein_normalized(k, parse_character(text), 60)
    previous = None
    for Q in (1, 2, 3, 5, 8, 13, 21, 34, 60):
        ideal = series_congruence_ideal(_truncate(f, Q), p).ideal
        if previous is not None:
            assert ideal_compare(ideal, previous) in ("equal", "subset")
        previous = ideal


@pytest.mark.parametrize("unit", [-1, 2, -3, 7, 11])
def test_ideal_ignores_unit_scaling(unit):
    for k in (4, 8, 20):
        f = eisenstein_normalized(k, trivial_character(1), 40)
        expected = series_congruence_ideal(f, 5)
        scaled = series_congruence_ideal(f.scale(unit), 5)
        assert ideal_compare(scaled.ideal, expected.ideal) == "equal"
        assert scaled.stabilization_index == expected.stabilization_index
