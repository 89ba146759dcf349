"""
Eisenstein series q-expansions and congruence ideals read off from them.
"""

from .congruence import max_congruence_search, series_congruence_ideal, verify_an_factorization
from .eisenstein import (
    EisensteinBasisElement,
    QSeries,
    basis_enumeration,
    default_precision,
    eisenstein_normalized,
    eisenstein_qexp,
    level_one_basis,
    sigma_chi,
)

__all__ = [
    "EisensteinBasisElement",
    "QSeries",
    "basis_enumeration",
    "default_precision",
    "eisenstein_normalized",
    "eisenstein_qexp",
    "level_one_basis",
    "max_congruence_search",
    "series_congruence_ideal",
    "sigma_chi",
    "verify_an_factorization",
]
