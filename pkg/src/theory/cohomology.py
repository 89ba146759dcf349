"""
Compactly supported H^1 of the twisted Tate module through finite quotients.

At level m the module is Z[zeta_n]/(p^m) with each group generator acting by multiplication
by chi(x) x^k. The fixed points are the kernel of the stacked matrices (C_i - I); the
stabilized fixed points give H^1_c = Z_p[chi]/I.
"""

import logging
from math import gcd
from typing import List, Sequence, Tuple

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from ..arith.char import char_value, factor_p_part, is_parity_admissible
from ..arith.cyclo import CyclotomicNumber, ideal_compare, ideal_from_lattice
from ..arith.primes import prime_decomposition
from ..models.schemas import (
    DirichletCharacter,
    FiniteQuotientModule,
    FixedPointGroup,
    H1Result,
)
from .reptheory import predict_max_congruence, profinite_generators

logger = logging.getLogger(__name__)


def _action_matrix(c: CyclotomicNumber, q: int) -> Tuple[Tuple[int, ...], ...]:
    """Matrix of multiplication by c on the power basis, entries mod q."""
    d = len(c.numerator)
    columns = []
    x = c
    for _ in range(d):
        columns.append([value % q for value in x.numerator])
        x = x.times_zeta()
    return tuple(tuple(columns[j][i] for j in range(d)) for i in range(d))


def action_elements(k: int, chi: DirichletCharacter, p: int, m: int) -> List[CyclotomicNumber]:
    """chi(x) x^k mod p^m for x in the topological generating set."""
    chi_p, chi_prime = factor_p_part(chi, p)
    n = chi.image_order
    generators = profinite_generators(p, chi_prime.modulus, m)
    q = p**m
    elements = []
    for a in (generators.g,) + generators.torsion_generators:
        elements.append((char_value(chi_p, a, n) * pow(a, k, q)).reduce_mod(q))
    for b in generators.tame_generators:
        elements.append(char_value(chi_prime, b, n).reduce_mod(q))
    return elements


def quotient_module(k: int, chi: DirichletCharacter, p: int, m: int) -> FiniteQuotientModule:
    """Z[zeta_n]/(p^m) with its action matrices."""
    if m < 1:
        raise ValueError(f"Level must be positive, got {m}")
    q = p**m
    actions = tuple(_action_matrix(c, q) for c in action_elements(k, chi, p, m))
    return FiniteQuotientModule(p=p, level=m, n=chi.image_order, actions=actions)


def _stacked(module: FiniteQuotientModule) -> List[List[int]]:
    q = module.p**module.level
    d = module.dimension
    rows = []
    for action in module.actions:
        for i, row in enumerate(action):
            rows.append([(row[j] - (1 if i == j else 0)) % q for j in range(d)])
    return rows


def _kernel_mod_prime_power(
    rows: Sequence[Sequence[int]], d: int, p: int, m: int
) -> Tuple[List[int], List[List[int]]]:
    """
    Kernel of a matrix over Z/p^m by column elimination.

    Returns:
        (orders of the cyclic summands as exponents of p, generators of the kernel lattice in Z^d)
    """
    q = p**m
    matrix = [[value % q for value in row] for row in rows]
    transform = [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    active_rows = set(range(len(matrix)))
    active_cols = set(range(d))
    pivots = []

    def v_p(value: int) -> int:
        t = 0
        while value % p == 0:
            value //= p
            t += 1
        return t

    while True:
        best = None
        for r in active_rows:
            for c in active_cols:
                entry = matrix[r][c]
                if entry:
                    t = v_p(entry)
                    if best is None or t < best[0]:
                        best = (t, r, c)
        if best is None:
            break
        t, r, c = best
        unit_inv = pow(matrix[r][c] // p**t, -1, q)
        for row in matrix:
            row[c] = row[c] * unit_inv % q
        transform[c] = [x * unit_inv % q for x in transform[c]]
        for c2 in active_cols:
            if c2 == c or not matrix[r][c2]:
                continue
            factor = matrix[r][c2] // p**t
            for row in matrix:
                row[c2] = (row[c2] - factor * row[c]) % q
            transform[c2] = [(x - factor * y) % q for x, y in zip(transform[c2], transform[c])]
        active_rows.discard(r)
        active_cols.discard(c)
        pivots.append((c, t))

    exponents = [t for _, t in pivots if t > 0] + [m] * len(active_cols)
    kernel = [[x * p ** (m - t) for x in transform[c]] for c, t in pivots]
    kernel += [list(transform[c]) for c in sorted(active_cols)]
    kernel += [[q if i == j else 0 for i in range(d)] for j in range(d)]
    return sorted(exponents), kernel


def _smith_summands(matrix: List[List[int]], rank_bound: int, q: int) -> List[int]:
    """Orders gcd(delta_j, q) > 1 from the Smith form of an integer matrix."""
    if not matrix or not matrix[0]:
        return []
    form = smith_normal_form(Matrix(matrix), domain=ZZ)
    summands = []
    for j in range(rank_bound):
        delta = abs(int(form[j, j])) if j < min(form.shape) else 0
        order = q if delta == 0 else gcd(delta, q)
        if order > 1:
            summands.append(order)
    return sorted(summands)


def fixed_points_finite_level(
    k: int, chi: DirichletCharacter, p: int, m: int
) -> FixedPointGroup:
    """
    The fixed points of Z[zeta_n]/(p^m) under the twisted action.

    Args:
        k: Weight
        chi: Primitive character
        p: The prime
        m: Level

    Returns:
        Invariant factors, order and per-prime lengths of the fixed-point group
    """
    module = quotient_module(k, chi, p, m)
    q = p**m
    d = module.dimension
    rows = _stacked(module)
    exponents, kernel = _kernel_mod_prime_power(rows, d, p, m)
    summands = [p**t for t in exponents]
    order = 1
    for s in summands:
        order *= s

    smith = _smith_summands(rows, d, q)
    if smith != summands:
        logger.warning(
            "Smith form %s disagrees with elimination %s at level %d", smith, summands, m
        )

    decomposition = prime_decomposition(module.n, p)
    lattice = ideal_from_lattice(module.n, kernel)
    if order != q**d // lattice.norm:
        logger.warning("Kernel index %d does not match the group order %d", lattice.norm, order)
    valuations = tuple(
        int(decomposition.e * m - v) for v in decomposition.ideal_valuations(lattice)
    )
    return FixedPointGroup(
        p=p, level=m, invariant_factors=tuple(summands), order=order, valuations=valuations
    )


def coinvariants_finite_level(
    k: int, chi: DirichletCharacter, p: int, m: int
) -> FixedPointGroup:
    """Coinvariants: cokernel of the horizontally stacked (C_i - I)."""
    module = quotient_module(k, chi, p, m)
    q = p**m
    d = module.dimension
    blocks = _stacked(module)
    count = len(module.actions)
    wide = [[blocks[b * d + i][j] for b in range(count) for j in range(d)] for i in range(d)]
    summands = _smith_summands(wide, d, q)
    order = 1
    for s in summands:
        order *= s
    return FixedPointGroup(p=p, level=m, invariant_factors=tuple(summands), order=order)


def h1_stabilized(
    k: int, chi: DirichletCharacter, p: int, m_max: int = 8, grow: bool = True
) -> H1Result:
    """
    Fixed points level by level until three consecutive levels agree.

    The fixed points at level m only see valuations up to e*m, so a congruence ideal of
    depth d needs about d/e levels plus two more to confirm the run.

    Args:
        k: Weight
        chi: Primitive character
        p: The prime
        m_max: Highest level tried
        grow: Raise m_max to ceil(d/e) + 2 when the predicted depth d needs it

    Raises:
        ValueError: On parity mismatch
        RuntimeError: If no stable run appears by the level budget
    """
    if not is_parity_admissible(k, chi):
        raise ValueError(f"Parity mismatch between weight {k} and {chi}")
    decomposition = prime_decomposition(chi.image_order, p)
    prediction = predict_max_congruence(k, chi, p)
    if grow:
        depth = max(prediction.valuations, default=0)
        needed = -(-depth // decomposition.e) + 2
        if needed > m_max:
            logger.info("Raising the level budget from %d to %d for k=%d", m_max, needed, k)
            m_max = needed
    levels: List[FixedPointGroup] = []
    for m in range(1, m_max + 1):
        levels.append(fixed_points_finite_level(k, chi, p, m))
        if len(levels) >= 3 and len({lv.invariant_factors for lv in levels[-3:]}) == 1:
            break
    else:
        raise RuntimeError(f"Fixed points did not stabilize by level {m_max}")

    stable = levels[-3]
    ideal = decomposition.ideal_from_valuations(stable.valuations)
    agrees = ideal_compare(ideal, prediction.ideal) == "equal"
    if not agrees:
        logger.warning("H^1 ideal for chi=%s k=%d p=%d differs from the prediction", chi, k, p)
    return H1Result(
        p=p,
        k=k,
        character=str(chi),
        levels=tuple(levels),
        stabilization_level=stable.level,
        ideal=ideal,
        valuations=stable.valuations,
        agrees_with_prediction=agrees,
    )
