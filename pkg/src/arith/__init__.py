"""
Exact arithmetic: Dirichlet characters, cyclotomic integers and ideals, primes above p,
Bernoulli numbers and the multiplicative formal group.
"""

from .bernoulli import (
    GeneralizedBernoulli,
    bernoulli_polynomial,
    bernoulli_rational,
    bkchi_over_2k_valuation,
    generalized_bernoulli,
    valuation_table,
)
from .char import (
    char_exponent,
    char_value,
    character_from_values,
    character_of_order,
    character_text,
    characters,
    factor_p_part,
    induce,
    inverse,
    is_parity_admissible,
    multiply,
    p_adic_factor_count,
    parity,
    parse_character,
    primitive_character,
    primitive_characters,
    same_character,
    teichmuller,
    teichmuller_character,
    trivial_character,
    unit_group_generators,
)
from .cyclo import (
    CyclotomicNumber,
    cyc_arith,
    extend_ideal,
    from_exponents,
    from_int,
    from_rational,
    ideal_compare,
    ideal_contains,
    ideal_from_generators,
    ideal_from_lattice,
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
from .formal import TruncatedSeries, mult_by_a_series, torsion_order, vanishing_power
from .primes import PrimeDecomposition, p_adic_valuation, prime_decomposition

__all__ = [
    "CyclotomicNumber",
    "GeneralizedBernoulli",
    "PrimeDecomposition",
    "TruncatedSeries",
    "bernoulli_polynomial",
    "bernoulli_rational",
    "bkchi_over_2k_valuation",
    "char_exponent",
    "char_value",
    "character_from_values",
    "character_of_order",
    "character_text",
    "characters",
    "cyc_arith",
    "extend_ideal",
    "factor_p_part",
    "from_exponents",
    "from_int",
    "from_rational",
    "generalized_bernoulli",
    "ideal_compare",
    "ideal_contains",
    "ideal_from_generators",
    "ideal_from_lattice",
    "ideal_generators",
    "ideal_product",
    "ideal_sum",
    "induce",
    "inverse",
    "is_parity_admissible",
    "mult_by_a_series",
    "multiply",
    "one",
    "p_adic_factor_count",
    "p_adic_valuation",
    "parity",
    "parse_character",
    "parse_ideal",
    "pi_valuation",
    "prime_decomposition",
    "primitive_character",
    "primitive_characters",
    "ring_degree",
    "same_character",
    "teichmuller",
    "teichmuller_character",
    "torsion_order",
    "trivial_character",
    "unit_group_generators",
    "unit_ideal",
    "valuation_table",
    "vanishing_power",
    "zero",
    "zero_ideal",
    "zeta_power",
]
