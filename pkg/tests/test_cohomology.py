"""
Tests for H^1 through finite quotient modules.
"""

import sys
from pathlib import Path

import pytest

# Add the repository root to the path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.arith.char import character_of_order, parse_character
from src.arith.cyclo import ideal_compare, ideal_from_generators, one, zeta_power
from src.theory.cohomology import (
    coinvariants_finite_level,
    fixed_points_finite_level,
    h1_stabilized,
    quotient_module,
)


def test_quotient_module_shape():
    chi = character_of_order(11, 5)
    module = quotient_module(4, chi, 5, 2)
    assert module.dimension == 4
    assert len(module.actions) == 3
    assert all(0 <= x < 25 for action in module.actions for row in action for x in row)
    with pytest.raises(ValueError):
        quotient_module(4, chi, 5, 0)


def test_order_five_character_by_weight():
    """A/m when (p - 1) | k and 0 otherwise."""
    print("🧪 Testing: H^1 for chi of order 5 modulo 11 at p = 5")
    chi = character_of_order(11, 5)
    maximal = ideal_from_generators(5, [one(5) - zeta_power(5, 1)])
    for k in (2, 4, 6, 8):
        result = h1_stabilized(k, chi, 5, 8)
        if k % 4 == 0:
            assert ideal_compare(result.ideal, maximal) == "equal"
            assert result.valuations == (1,)
        else:
            assert result.ideal.is_unit
        assert result.agrees_with_prediction
        assert result.stabilization_level <= 6


def test_fixed_points_at_each_level():
    chi = character_of_order(11, 5)
    for m in (1, 2, 3):
        group = fixed_points_finite_level(4, chi, 5, m)
        assert group.invariant_factors == (5,)
        assert group.order == 5
        assert group.valuations == (1,)


def test_trivial_character_depths():
    trivial = parse_character("trivial")
    result = h1_stabilized(20, trivial, 5)
    assert ideal_compare(result.ideal, ideal_from_generators(1, [25])) == "equal"
    assert result.stabilization_level == 2
    assert [level.order for level in result.levels[:3]] == [5, 25, 25]

    result = h1_stabilized(2, trivial, 2)
    assert ideal_compare(result.ideal, ideal_from_generators(1, [8])) == "equal"


def test_coinvariants_stay_bounded():
    trivial = parse_character("trivial")
    for m in (2, 3, 4):
        assert coinvariants_finite_level(4, trivial, 5, m).order == 5


def test_errors():
    trivial = parse_character("trivial")
    with pytest.raises(ValueError):
        h1_stabilized(3, trivial, 5)
    with pytest.raises(RuntimeError):
        h1_stabilized(20, trivial, 5, m_max=3, grow=False)


def test_level_budget_grows_with_depth():
    print("🧪 Testing: deep congruences at p = 2 get enough levels")
    trivial = parse_character("trivial")
    result = h1_stabilized(32, trivial, 2)
    assert ideal_compare(result.ideal, ideal_from_generators(1, [128])) == "equal"
    assert result.valuations == (7,)
    assert result.stabilization_level == 7
    assert len(result.levels) == 9
    assert result.agrees_with_prediction

    result = h1_stabilized(20, trivial, 5, m_max=3)
    assert result.valuations == (2,)
    assert len(result.levels) == 4
