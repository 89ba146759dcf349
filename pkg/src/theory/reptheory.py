"""
Maximal congruences of Z_p^(k)[chi] over Lambda = Z_p[[Z_p^x x (Z/N')^x]].

The prediction is the closed-form seven-case theorem; the oracle computes the same ideal
directly as the augmentation image (1 - chi(x) x^k : x in a generating set) + (p^M).
"""

import logging
from collections import deque
from itertools import count
from typing import List, Tuple

from sympy import discrete_log, factorint, multiplicity, n_order, totient

from ..arith.char import (
    char_value,
    factor_p_part,
    parity,
    teichmuller,
    unit_group_generators,
)
from ..arith.cyclo import from_int, ideal_from_generators, one
from ..arith.primes import prime_decomposition
from ..models.schemas import (
    CaseTag,
    CongruencePrediction,
    DirichletCharacter,
    IdealHNF,
    ProfiniteGeneratorSet,
)

logger = logging.getLogger(__name__)


def _p_power_exponent(value: int, p: int) -> int:
    """log_p(value) for a power of p, or -1 otherwise."""
    factors = factorint(value)
    if set(factors) - {p}:
        return -1
    return factors.get(p, 0)


def _primitive_root(p: int) -> int:
    return unit_group_generators(p).generators[0][0]


def classify_case(chi: DirichletCharacter, p: int) -> CaseTag:
    """Case of the theorem for a primitive chi = chi_p * chi'."""
    if not chi.is_primitive:
        raise ValueError(f"{chi} is not primitive")
    chi_p, chi_prime = factor_p_part(chi, p)
    v = int(multiplicity(p, chi.conductor))
    if chi_prime.modulus == 1:
        if p == 2:
            return "II" if v <= 2 else "IV"
        return "I" if v <= 1 else "III"
    if _p_power_exponent(chi_prime.image_order, p) < 0:
        return "V"
    return "VII" if p == 2 else "VI"


def teichmuller_exponents(chi: DirichletCharacter, p: int) -> Tuple[int, ...]:
    """
    Per prime above p, the exponent a in Z/(p-1) with chi_p = omega^a on the torsion of Z_p^x.

    The identification uses the residue map at each prime, so different primes can give
    different exponents.
    """
    chi_p, _ = factor_p_part(chi, p)
    n = chi.image_order
    decomposition = prime_decomposition(n, p)
    if p == 2:
        return (1 if parity(chi_p) == -1 else 0,) * decomposition.g
    r = _primitive_root(p)
    v = max(int(multiplicity(p, chi_p.modulus)), 1)
    lift = teichmuller(p, r, v)
    value = char_value(chi_p, lift, n)
    exponents = []
    for i in range(decomposition.g):
        residue = decomposition.residue(value.numerator, i)
        # (p-1)-st roots of unity reduce into the prime field
        if any(residue[1:]):
            raise ArithmeticError(f"Residue of {value} above {p} is not in F_{p}")
        exponents.append(int(discrete_log(p, residue[0], r)) % (p - 1))
    return tuple(exponents)


def predict_max_congruence(
    k: int, chi: DirichletCharacter, p: int, M: int = 12
) -> CongruencePrediction:
    """
    Closed-form maximal congruence ideal of Z_p^(k)[chi] in Z[zeta_n].

    Args:
        k: Weight, at least 1
        chi: Primitive character
        p: The prime
        M: Only used for sanity checks against e * M

    Returns:
        Case tag, per-prime valuations and the ideal
    """
    if k < 1:
        raise ValueError(f"Weight must be at least 1, got {k}")
    case = classify_case(chi, p)
    chi_p, chi_prime = factor_p_part(chi, p)
    v = int(multiplicity(p, chi.conductor))
    n = chi.image_order
    decomposition = prime_decomposition(n, p)
    e, w, g = decomposition.e, decomposition.w, decomposition.g
    v_prime = max(_p_power_exponent(chi_prime.image_order, p), 0)
    exponents = teichmuller_exponents(chi, p)

    def divisible(a: int) -> bool:
        return (k + a) % (p - 1) == 0

    if case == "I":
        depth = e * (int(multiplicity(p, k)) + 1)
        valuations = [depth if divisible(a) else 0 for a in exponents]
    elif case == "II":
        odd = exponents[0]
        depth = int(multiplicity(2, k)) + 2 if (k + odd) % 2 == 0 else 1
        valuations = [e * depth] * g
    elif case == "III":
        valuations = [p ** (w - (v - 1)) if divisible(a) else 0 for a in exponents]
    elif case == "IV":
        valuations = [2 ** (w - (v - 2))] * g
    elif case == "V":
        valuations = [0] * g
    elif case == "VI":
        depth = p ** (w - max(v - 1, v_prime))
        valuations = [depth if divisible(a) else 0 for a in exponents]
    else:
        valuations = [2 ** (w - max(v_prime, v - 2))] * g

    if any(s > e * M for s in valuations):
        logger.warning("Predicted valuation exceeds the precision cap e*M = %d", e * M)
    logger.debug("chi=%s p=%d k=%d: case %s, valuations %s", chi, p, k, case, valuations)
    return CongruencePrediction(
        case_tag=case,
        p=p,
        k=k,
        character=str(chi),
        v=v,
        v_prime=v_prime,
        tame_conductor=chi_prime.modulus,
        image_order=n,
        teichmuller_exponents=exponents,
        valuations=tuple(valuations),
        ideal=decomposition.ideal_from_valuations(valuations),
    )


def profinite_generators(p: int, tame_modulus: int, M: int) -> ProfiniteGeneratorSet:
    """
    Integers whose images topologically generate Z_p^x x (Z/N')^x.

    For odd p: the smallest primitive root mod p^2 and the Teichmuller lift of the smallest
    primitive root mod p. For p = 2: 5 and -1. The tame part uses the generators of (Z/N')^x.
    """
    if M < 1:
        raise ValueError("Precision must be positive")
    if tame_modulus % p == 0:
        raise ValueError(f"Tame modulus {tame_modulus} is divisible by {p}")
    q = p**M
    if p == 2:
        g = 5
        torsion = (q - 1,)
    else:
        target = (p - 1) * p
        g = next(a for a in count(2) if a % p and n_order(a, p * p) == target)
        torsion = (teichmuller(p, _primitive_root(p), M),)
    tame = tuple(h for h, _ in unit_group_generators(tame_modulus).generators)
    return ProfiniteGeneratorSet(
        p=p,
        g=g,
        torsion_generators=torsion,
        tame_modulus=tame_modulus,
        tame_generators=tame,
        precision=M,
    )


def generates(generators: ProfiniteGeneratorSet) -> bool:
    """Check generation on the finite quotient (Z/p^c)^x x (Z/N')^x, c = 2 (3 when p = 2)."""
    p = generators.p
    c = 3 if p == 2 else 2
    q = p**c
    N = generators.tame_modulus
    elements: List[Tuple[int, int]] = [(generators.g % q, 1 % N)]
    elements += [(t % q, 1 % N) for t in generators.torsion_generators]
    elements += [(1 % q, b % N) for b in generators.tame_generators]
    start = (1 % q, 1 % N)
    seen = {start}
    queue = deque([start])
    while queue:
        a, b = queue.popleft()
        for x, y in elements:
            nxt = (a * x % q, b * y % N)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == int(totient(q)) * int(totient(N))


def oracle_max_congruence(k: int, chi: DirichletCharacter, p: int, M: int = 12) -> IdealHNF:
    """
    The ideal (p^M, 1 - chi_p(a) chi'(b) a^k) over a, b running through the generators.

    Args:
        k: Weight
        chi: Primitive character
        p: The prime
        M: p-adic precision

    Returns:
        The ideal in Z[zeta_n], n the image order of chi
    """
    chi_p, chi_prime = factor_p_part(chi, p)
    n = chi.image_order
    generators = profinite_generators(p, chi_prime.modulus, M)
    q = p**M
    elements = [from_int(n, q)]
    for a in (generators.g,) + generators.torsion_generators:
        elements.append(one(n) - char_value(chi_p, a, n) * pow(a, k, q))
    for b in generators.tame_generators:
        elements.append(one(n) - char_value(chi_prime, b, n))
    return ideal_from_generators(n, elements)
