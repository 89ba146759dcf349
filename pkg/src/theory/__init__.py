"""
Representation-theoretic prediction of congruences and its cohomological counterpart.
"""

from .cohomology import (
    coinvariants_finite_level,
    fixed_points_finite_level,
    h1_stabilized,
    quotient_module,
)
from .reptheory import (
    classify_case,
    generates,
    oracle_max_congruence,
    predict_max_congruence,
    profinite_generators,
    teichmuller_exponents,
)

__all__ = [
    "classify_case",
    "coinvariants_finite_level",
    "fixed_points_finite_level",
    "generates",
    "h1_stabilized",
    "oracle_max_congruence",
    "predict_max_congruence",
    "profinite_generators",
    "quotient_module",
    "teichmuller_exponents",
]
