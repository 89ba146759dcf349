"""
Tests for Eisenstein q-expansions and bases.
"""

import logging
import sys
from math import gcd
from pathlib import Path

import pytest

# Add the repository root to the path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.arith.char import char_value, parse_character, trivial_character
from src.arith.cyclo import from_exponents
from src.modular.eisenstein import (
    _clear_content,
    basis_enumeration,
    default_precision,
    eisenstein_normalized,
    eisenstein_qexp,
    level_one_basis,
    sigma_chi,
)


def _integers(series):
    return [int(c.numerator[0]) for c in series.coeffs]


def test_level_one_series():
    print("🧪 Testing: E_2, E_4, E_12 normalizations")
    e4 = eisenstein_normalized(4, trivial_character(1), 6)
    assert _integers(e4) == [1, 240, 2160, 6720, 17520, 30240, 60480]
    e2 = eisenstein_normalized(2, trivial_character(1), 4)
    assert _integers(e2) == [1, -24, -72, -96, -168]
    e12 = eisenstein_normalized(12, trivial_character(1), 2)
    assert _integers(e12) == [691, 65520, 65520 * 2049]


def test_product_identity():
    """E_4^2 = E_8 coefficient by coefficient."""
    e4 = eisenstein_normalized(4, trivial_character(1), 12)
    e8 = eisenstein_normalized(8, trivial_character(1), 12)
    assert (e4 * e4).coeffs == e8.coeffs


def test_dilate_and_scale():
    e4 = eisenstein_normalized(4, trivial_character(1), 6)
    dilated = e4.dilate(2)
    assert _integers(dilated) == [1, 0, 240, 0, 2160, 0, 6720]
    assert _integers(e4.scale(2))[1] == 480
    assert _integers(e4 - e4) == [0] * 7
    with pytest.raises(ValueError):
        e4.dilate(0)


def test_quadratic_character_series():
    chi = parse_character("5:2:[1]")
    series = eisenstein_normalized(2, chi, 5)
    assert _integers(series) == [1, -5, 5, 10, -15, -5]


def test_sigma_chi():
    assert sigma_chi(3, trivial_character(1), 6) == 252
    assert sigma_chi(0, parse_character("3:2:[1]"), 4) == 1
    assert sigma_chi(0, parse_character("3:2:[1]"), 2) == 0


def test_eisenstein_qexp():
    chi = parse_character("3:2:[1]")
    series = eisenstein_qexp(1, trivial_character(1), chi, 1, 6)
    assert _integers(series) == [0, 1, 0, 1, 1, 0, 0]
    dilated = eisenstein_qexp(1, trivial_character(1), chi, 2, 6)
    assert _integers(dilated) == [0, 0, 1, 0, 0, 0, 1]

    with pytest.raises(ValueError):
        eisenstein_qexp(4, trivial_character(1), trivial_character(1))
    with pytest.raises(ValueError):
        eisenstein_qexp(0, trivial_character(1), chi)
    with pytest.raises(ValueError):
        eisenstein_qexp(1, trivial_character(1), chi, t=0)


def test_normalized_errors():
    with pytest.raises(ValueError):
        eisenstein_normalized(3, trivial_character(1), 10)
    with pytest.raises(ValueError):
        eisenstein_normalized(0, trivial_character(1), 10)


def test_level_one_basis():
    basis = level_one_basis(2, 10)
    assert len(basis) == 1
    assert basis[0].quasimodular
    assert not level_one_basis(4, 10)[0].quasimodular
    with pytest.raises(ValueError):
        level_one_basis(3, 10)


def test_basis_dimensions():
    chi = parse_character("11:5:[1]")
    basis = basis_enumeration(2, 11, chi, 20)
    assert len(basis) == 2
    assert {element.series.n for element in basis} == {5}
    assert all(element.series.precision == 20 for element in basis)

    # weight one: swapped pairs give the same series
    assert len(basis_enumeration(1, 7, parse_character("7:6:[1]"), 20)) == 1

    # E_2 at level 5 with trivial character: only E_2(q) - 5 E_2(q^5)
    assert len(basis_enumeration(2, 5, trivial_character(1), 20)) == 1
    assert len(basis_enumeration(4, 5, trivial_character(1), 20)) == 2


def test_basis_errors():
    chi = parse_character("11:5:[1]")
    with pytest.raises(ValueError):
        basis_enumeration(2, 1, trivial_character(1), 10)
    with pytest.raises(ValueError):
        basis_enumeration(3, 11, chi, 10)
    with pytest.raises(ValueError):
        basis_enumeration(2, 7, chi, 10)


def test_default_precision():
    assert default_precision(4) == 200
    assert default_precision(80) == 320


@pytest.mark.parametrize("text, k", [("trivial", 4), ("5:4:[1]", 3), ("7:3:[1]", 2)])
def test_sigma_is_multiplicative(text, k):
    chi = parse_character(text)
    values = {m: sigma_chi(k - 1, chi, m) for m in range(1, 101)}
    for m in range(2, 101):
        for n in range(m + 1, 101):
            if gcd(m, n) == 1:
                assert sigma_chi(k - 1, chi, m * n) == values[m] * values[n]


def test_twisted_coefficients_are_multiplicative():
    print("🧪 Testing: a(mn) = a(m) a(n) and the Hecke recursion at primes")
    chi1, chi2 = parse_character("3:2:[1]"), parse_character("5:4:[1]")
    k, Q = 2, 200
    a = eisenstein_qexp(k, chi1, chi2, 1, Q).coeffs
    L = a[1].n
    for m in range(2, Q + 1):
        for n in range(m + 1, Q // m + 1):
            if gcd(m, n) == 1:
                assert a[m * n] == a[m] * a[n]
    for p in (2, 3, 5, 7):
        twist = char_value(chi1, p, L) * char_value(chi2, p, L) * p ** (k - 1)
        power = p
        while power * p <= Q:
            assert a[power * p] == a[p] * a[power] - twist * a[power // p]
            power *= p


def test_content_warning_only_when_content_remains(caplog):
    # over Z[i]: (3 - 3i, 3 - i) loses its (1 - i) factor and becomes coprime
    cleared = [from_exponents(4, [3, -3]), from_exponents(4, [3, -1])]
    with caplog.at_level(logging.WARNING, logger="src.modular.eisenstein"):
        result = _clear_content(cleared)
    assert result[0] == 3
    assert result[1] == from_exponents(4, [2, 1])
    assert "Non-principal content" not in caplog.text

    # (6 + 3i, 5) = (2 + i) and neither generator divides the other
    stuck = [from_exponents(4, [6, 3]), from_exponents(4, [5])]
    with caplog.at_level(logging.WARNING, logger="src.modular.eisenstein"):
        _clear_content(stuck)
    assert "Non-principal content" in caplog.text
