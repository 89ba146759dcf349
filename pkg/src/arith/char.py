"""
Dirichlet characters as exponent vectors against fixed generators of (Z/N)^x.
"""

import re
from functools import lru_cache, reduce
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import discrete_log, factorint, ilcm, multiplicity, n_order, totient
from sympy.ntheory.modular import crt

from ..models.schemas import DirichletCharacter, UnitGroupStructure
from .cyclo import CyclotomicNumber, zero, zeta_power

_CHARACTER_TEXT = re.compile(r"^\s*(\d+)\s*:\s*(\d+)\s*:\s*\[([\d,\s-]*)\]\s*$")


def _local_generators(p: int, e: int) -> List[Tuple[int, int]]:
    """Generators of (Z/p^e)^x with their orders."""
    q = p**e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(q - 1, 2), (3, 2 ** (e - 2))]
    phi = (p - 1) * p ** (e - 1)
    g = next(g for g in range(2, q) if g % p and n_order(g, q) == phi)
    return [(g, phi)]


def _crt_lift(residue: int, q: int, N: int) -> int:
    """The residue mod N that is residue mod q and 1 mod N/q."""
    if q == N:
        return residue % N
    return int(crt([q, N // q], [residue, 1])[0])


@lru_cache(maxsize=None)
def unit_group_generators(N: int) -> UnitGroupStructure:
    """
    Generators of (Z/N)^x, one block per prime power in increasing prime order.

    Odd p^e contributes its smallest primitive root; 4 contributes 3; 2^e with e >= 3
    contributes -1 and 3. Each is lifted to be 1 at the other prime powers.
    """
    if N < 1:
        raise ValueError(f"Modulus must be positive, got {N}")
    generators = []
    for p, e in sorted(factorint(N).items()):
        q = p**e
        for g, order in _local_generators(p, e):
            generators.append((_crt_lift(g, q, N), order))
    return UnitGroupStructure(
        modulus=N, generators=tuple(generators), is_cyclic_flag=len(generators) <= 1
    )


@lru_cache(maxsize=None)
def _discrete_log_table(N: int) -> Dict[int, Tuple[int, ...]]:
    """Unit residue mod N -> exponents against the generators."""
    structure = unit_group_generators(N)
    table = {}
    for powers in product(*(range(order) for order in structure.orders)):
        a = 1 % N
        for (g, _), j in zip(structure.generators, powers):
            a = a * pow(g, j, N) % N
        table[a] = powers
    return table


def _blocks(N: int) -> List[Tuple[int, int, int]]:
    """(p, e, number of generators) per prime power factor of N."""
    return [(p, e, len(_local_generators(p, e))) for p, e in sorted(factorint(N).items())]


def _conductor(modulus: int, n: int, exponents: Sequence[int]) -> int:
    conductor = 1
    index = 0
    for p, e, count in _blocks(modulus):
        local = exponents[index : index + count]
        index += count
        if not any(local):
            continue
        if p != 2:
            order = n // gcd(local[0], n)
            conductor *= p ** (1 + multiplicity(p, order))
        elif e == 2:
            conductor *= 4
        else:
            # 5 = -1 * 3^u mod 2^e
            q = 2**e
            u = int(discrete_log(q, (-5) % q, 3))
            e5 = (local[0] + u * local[1]) % n
            order5 = n // gcd(e5, n)
            conductor *= 4 if order5 == 1 else 2 ** (2 + multiplicity(2, order5))
    return conductor


def _build(modulus: int, n: int, exponents: Sequence[int]) -> DirichletCharacter:
    """Character with chi(g_i) = zeta_n^{exponents[i]}, reduced to its exact image order."""
    structure = unit_group_generators(modulus)
    if len(exponents) != len(structure.generators):
        raise ValueError(
            f"(Z/{modulus})^x has {len(structure.generators)} generators, "
            f"got {len(exponents)} exponents"
        )
    if n < 1:
        raise ValueError("Image order must be positive")
    exps = [e % n for e in exponents]
    for e, order in zip(exps, structure.orders):
        if (e * order) % n:
            raise ValueError(f"Exponent {e}/{n} is incompatible with a generator of order {order}")
    common = reduce(gcd, exps, n)
    n //= common
    exps = [e // common for e in exps]
    return DirichletCharacter(
        modulus=modulus,
        image_order=n,
        exponents=tuple(exps),
        conductor=_conductor(modulus, n, exps),
    )


def character_from_values(N: int, values: Sequence[int]) -> DirichletCharacter:
    """Character with chi(g_i) = exp(2 pi i values[i] / ord(g_i))."""
    orders = unit_group_generators(N).orders
    if len(values) != len(orders):
        raise ValueError(f"(Z/{N})^x has {len(orders)} generators, got {len(values)} values")
    n0 = reduce(ilcm, orders, 1)
    return _build(N, int(n0), [c * (int(n0) // order) for c, order in zip(values, orders)])


def characters(N: int) -> List[DirichletCharacter]:
    """All characters mod N, in lexicographic order of generator values."""
    orders = unit_group_generators(N).orders
    return [character_from_values(N, values) for values in product(*(range(o) for o in orders))]


def primitive_characters(N: int) -> List[DirichletCharacter]:
    return [chi for chi in characters(N) if chi.is_primitive]


def trivial_character(N: int = 1) -> DirichletCharacter:
    return _build(N, 1, [0] * len(unit_group_generators(N).generators))


def character_of_order(N: int, order: int, primitive: bool = True) -> DirichletCharacter:
    """First character mod N of the given image order, in enumeration order."""
    for chi in characters(N):
        if chi.image_order == order and (chi.is_primitive or not primitive):
            return chi
    kind = "primitive character" if primitive else "character"
    raise ValueError(f"No {kind} of order {order} modulo {N}")


def char_exponent(chi: DirichletCharacter, a: int) -> Optional[int]:
    """j with chi(a) = zeta_n^j, or None when gcd(a, N) > 1."""
    if gcd(a, chi.modulus) != 1:
        return None
    powers = _discrete_log_table(chi.modulus)[a % chi.modulus]
    return sum(j * e for j, e in zip(powers, chi.exponents)) % chi.image_order


def char_value(chi: DirichletCharacter, a: int, ring: Optional[int] = None) -> CyclotomicNumber:
    """chi(a) in Z[zeta_ring]; ring defaults to the image order."""
    ring = ring or chi.image_order
    if ring % chi.image_order:
        raise ValueError(f"Z[zeta_{ring}] does not contain the values of {chi}")
    exponent = char_exponent(chi, a)
    if exponent is None:
        return zero(ring)
    return zeta_power(ring, exponent * (ring // chi.image_order))


def parity(chi: DirichletCharacter) -> int:
    """chi(-1) as +1 or -1."""
    exponent = char_exponent(chi, chi.modulus - 1)
    return 1 if exponent == 0 else -1


def is_parity_admissible(k: int, chi: DirichletCharacter) -> bool:
    return parity(chi) == (-1) ** k


def primitive_character(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod the conductor inducing chi."""
    if chi.is_primitive:
        return chi
    f = chi.conductor
    exponents = []
    for h, _ in unit_group_generators(f).generators:
        a = h
        while gcd(a, chi.modulus) != 1:
            a += f
        exponents.append(char_exponent(chi, a))
    return _build(f, chi.image_order, exponents)


def induce(chi: DirichletCharacter, M: int) -> DirichletCharacter:
    """chi viewed modulo a multiple M of its modulus."""
    if M % chi.modulus:
        raise ValueError(f"{M} is not a multiple of the modulus {chi.modulus}")
    exponents = [char_exponent(chi, h) for h, _ in unit_group_generators(M).generators]
    return _build(M, chi.image_order, exponents)


def multiply(chi: DirichletCharacter, psi: DirichletCharacter) -> DirichletCharacter:
    """Product character modulo lcm of the moduli."""
    M = int(ilcm(chi.modulus, psi.modulus))
    a, b = induce(chi, M), induce(psi, M)
    n = int(ilcm(a.image_order, b.image_order))
    exponents = [
        x * (n // a.image_order) + y * (n // b.image_order)
        for x, y in zip(a.exponents, b.exponents)
    ]
    return _build(M, n, exponents)


def inverse(chi: DirichletCharacter) -> DirichletCharacter:
    return _build(chi.modulus, chi.image_order, [-e for e in chi.exponents])


def same_character(chi: DirichletCharacter, psi: DirichletCharacter) -> bool:
    """Equality of the underlying primitive characters."""
    return primitive_character(chi) == primitive_character(psi)


def _restrict(chi: DirichletCharacter, part: int, other: int) -> DirichletCharacter:
    """The component of chi on (Z/part)^x, for chi mod part * other with coprime factors."""
    exponents = [
        char_exponent(chi, _crt_lift(h, part, part * other))
        for h, _ in unit_group_generators(part).generators
    ]
    return _build(part, chi.image_order, exponents)


def factor_p_part(
    chi: DirichletCharacter, p: int
) -> Tuple[DirichletCharacter, DirichletCharacter]:
    """
    Split a primitive chi as chi_p * chi' with chi_p mod p^v and chi' mod N', p not dividing N'.

    Args:
        chi: Primitive character of conductor N = p^v N'
        p: The prime

    Returns:
        (chi_p, chi'), each primitive at its own modulus
    """
    if not chi.is_primitive:
        raise ValueError(f"{chi} is not primitive")
    q = p ** multiplicity(p, chi.modulus)
    tame = chi.modulus // q
    return _restrict(chi, q, tame), _restrict(chi, tame, q)


def teichmuller(p: int, a: int, M: int) -> int:
    """
    The Teichmuller lift of a modulo p^M.

    For odd p this is the unique (p-1)-st root of unity congruent to a mod p; for p = 2 it is
    +1 or -1 according to a mod 4.
    """
    if a % p == 0:
        raise ValueError(f"{a} is not a unit modulo {p}")
    q = p**M
    if p == 2:
        return 1 % q if a % 4 == 1 else (q - 1) % q
    x = a % q
    while True:
        y = pow(x, p, q)
        if y == x:
            return x
        x = y


def teichmuller_character(p: int) -> DirichletCharacter:
    """omega: the character mod p (mod 4 when p = 2) of order p - 1 (order 2)."""
    if p == 2:
        return character_from_values(4, [1])
    return character_from_values(p, [1])


def p_adic_factor_count(n: int, p: int) -> int:
    """Number of primes of Z[zeta_n] above p: phi(n') / ord_{n'}(p), n' the prime-to-p part."""
    m = n // p ** multiplicity(p, n)
    if m == 1:
        return 1
    return int(totient(m)) // int(n_order(p, m))


def parse_character(text: str) -> DirichletCharacter:
    """Parse 'trivial' or the canonical 'N:n:[e1,...]' form."""
    if text.strip().lower() == "trivial":
        return trivial_character(1)
    match = _CHARACTER_TEXT.match(text)
    if not match:
        raise ValueError(f"Unrecognized character text: {text!r}")
    modulus, order, body = match.groups()
    exponents = [int(e) for e in body.split(",") if e.strip()]
    return _build(int(modulus), int(order), exponents)


def character_text(chi: DirichletCharacter) -> str:
    return "trivial" if chi.modulus == 1 else str(chi)
