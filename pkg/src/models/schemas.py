"""
Pydantic models for data validation and type safety.
"""

from datetime import datetime
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


CaseTag = Literal["I", "II", "III", "IV", "V", "VI", "VII"]
CellStatus = Literal["PASS", "FAIL", "INCONCLUSIVE"]
IdealRelation = Literal["equal", "subset", "superset", "incomparable"]


class UnitGroupStructure(BaseModel):
    """Generators of (Z/N)^x, CRT-ordered by prime power factor."""

    model_config = ConfigDict(frozen=True)

    modulus: int = Field(..., ge=1, description="The modulus N")
    generators: Tuple[Tuple[int, int], ...] = Field(
        ..., description="(residue mod N, multiplicative order) per generator"
    )
    is_cyclic_flag: bool = Field(..., description="Whether (Z/N)^x is cyclic")

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(order for _, order in self.generators)


class DirichletCharacter(BaseModel):
    """
    Finite-order character of (Z/N)^x.

    chi(g_i) = zeta_n^{exponents[i]} against the generators of unit_group_generators(modulus);
    image_order is the exact order of the image, so values live in Z[zeta_n].
    """

    model_config = ConfigDict(frozen=True)

    modulus: int = Field(..., ge=1, description="Modulus N")
    image_order: int = Field(..., ge=1, description="Exact order n of the image")
    exponents: Tuple[int, ...] = Field(..., description="Exponent of zeta_n at each generator")
    conductor: int = Field(..., ge=1, description="Minimal modulus through which chi factors")

    @property
    def is_trivial(self) -> bool:
        return self.image_order == 1

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def __str__(self) -> str:
        return f"{self.modulus}:{self.image_order}:[{','.join(str(e) for e in self.exponents)}]"


class IdealHNF(BaseModel):
    """
    Integral ideal of Z[zeta_n] as a lattice in the power basis.

    Row i of basis is the i-th column of the column-style Hermite normal form: its last nonzero
    entry sits at index i and is positive. The zero ideal has an empty basis and norm 0.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Ambient cyclotomic conductor")
    basis: Tuple[Tuple[int, ...], ...] = Field(..., description="HNF rows spanning the ideal")
    norm: int = Field(..., ge=0, description="Lattice index |Z[zeta_n]/I|, 0 for the zero ideal")

    @property
    def is_zero(self) -> bool:
        return self.norm == 0

    @property
    def is_unit(self) -> bool:
        return self.norm == 1

    def __str__(self) -> str:
        rows = " | ".join(" ".join(str(c) for c in row) for row in self.basis)
        return f"{self.n}; {rows}"


class CongruencePrediction(BaseModel):
    """Closed-form maximal congruence of Z_p^{(k)}[chi] from the seven-case theorem."""

    model_config = ConfigDict(frozen=True)

    case_tag: CaseTag = Field(..., description="Which of the seven cases applies")
    p: int = Field(..., description="The prime")
    k: int = Field(..., ge=1, description="Weight")
    character: str = Field(..., description="Canonical text of chi")
    v: int = Field(..., ge=0, description="Exponent of p in the conductor")
    v_prime: int = Field(0, ge=0, description="log_p of the image order of chi' when a p-power")
    tame_conductor: int = Field(..., ge=1, description="N' = prime-to-p part of the conductor")
    image_order: int = Field(..., ge=1, description="Image order n of chi (ambient Z[zeta_n])")
    teichmuller_exponents: Tuple[Optional[int], ...] = Field(
        default=(), description="Exponent a with chi|torsion = omega^a, per prime above p"
    )
    valuations: Tuple[int, ...] = Field(..., description="Predicted valuation per prime above p")
    ideal: IdealHNF = Field(..., description="Predicted ideal in Z[zeta_n]")


class ProfiniteGeneratorSet(BaseModel):
    """Topological generators of Z_p^x x (Z/N')^x."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., description="The prime")
    g: int = Field(..., description="Generator of Z_p^x (p odd) or of 1+4Z_2 (p=2)")
    torsion_generators: Tuple[int, ...] = Field(
        default=(), description="-1 and/or Teichmuller lifts, as integers mod p^M"
    )
    tame_modulus: int = Field(1, ge=1, description="N'")
    tame_generators: Tuple[int, ...] = Field(default=(), description="Generators of (Z/N')^x")
    precision: int = Field(..., ge=1, description="p-adic precision M of the integer lifts")


class CongruenceResult(BaseModel):
    """Maximal congruence ideal detected on q-expansions."""

    model_config = ConfigDict(frozen=True)

    ideal: IdealHNF = Field(..., description="Detected ideal, with p^M adjoined")
    valuations: Tuple[int, ...] = Field(..., description="Valuation per prime above p")
    stabilization_index: int = Field(
        ..., ge=0, description="Smallest n0 such that coefficients up to q^n0 fix the ideal"
    )
    q_precision: int = Field(..., ge=1, description="Truncation precision Q")
    p_precision: int = Field(..., ge=1, description="Exponent M of the adjoined p^M")
    confirmed: bool = Field(..., description="stabilization_index <= Q/2")
    trivial_to_precision: bool = Field(
        default=False, description="All checked coefficients vanish modulo p^M"
    )
    witness: Dict[str, Any] = Field(default_factory=dict, description="Series or combination used")
    notes: List[str] = Field(default_factory=list, description="Diagnostics")


class FiniteQuotientModule(BaseModel):
    """Z[zeta_n]/(p^m) with one action matrix per group generator."""

    model_config = ConfigDict(frozen=True)

    p: int
    level: int = Field(..., ge=1, description="The level m of the quotient")
    n: int = Field(..., description="Ambient cyclotomic conductor")
    actions: Tuple[Tuple[Tuple[int, ...], ...], ...] = Field(
        ..., description="Multiplication matrices (entries mod p^m), one per generator"
    )

    @property
    def dimension(self) -> int:
        return len(self.actions[0]) if self.actions else 0


class FixedPointGroup(BaseModel):
    """Finite abelian p-group descriptor: orders of the cyclic summands."""

    model_config = ConfigDict(frozen=True)

    p: int
    level: int
    invariant_factors: Tuple[int, ...] = Field(
        ..., description="Orders of the nontrivial cyclic summands, ascending"
    )
    order: int = Field(..., ge=1, description="Group order")
    valuations: Tuple[int, ...] = Field(
        default=(), description="Per prime above p: length of the fixed points at that prime"
    )


class H1Result(BaseModel):
    """Stabilized H^1_c identified with Z_p[chi]/I."""

    model_config = ConfigDict(frozen=True)

    p: int
    k: int
    character: str
    levels: Tuple[FixedPointGroup, ...] = Field(..., description="Fixed points per level m")
    stabilization_level: int = Field(..., ge=1, description="First level of the stable run")
    ideal: IdealHNF = Field(..., description="I with H^1 = Z_p[chi]/I")
    valuations: Tuple[int, ...]
    agrees_with_prediction: Optional[bool] = Field(None, description="Cross-check verdict")


class BernoulliRow(BaseModel):
    """One row of the B_{k,chi}/2k valuation table."""

    p: int
    N: int
    order: int
    k: int
    character: str
    valuation: Optional[int] = Field(None, description="None when B_{k,chi} = 0")


class VerificationCell(BaseModel):
    """One (p, chi, k) cell of the Main Theorem grid."""

    p: int
    N: int = Field(..., description="Conductor of chi, used as the level")
    k: int
    character: str
    case_tag: Optional[CaseTag] = None
    predicted: Optional[IdealHNF] = None
    oracle: Optional[IdealHNF] = None
    series: Optional[IdealHNF] = None
    cohomology: Optional[IdealHNF] = None
    stabilization_index: Optional[int] = None
    status: CellStatus = "FAIL"
    detail: Optional[str] = Field(None, description="Error message or precision caveat")


class GridReport(BaseModel):
    """Result of one verification run."""

    name: str = Field(..., description="Run name")
    timestamp: datetime = Field(default_factory=datetime.now)
    settings: Dict[str, Any] = Field(default_factory=dict)
    cells: List[VerificationCell] = Field(default_factory=list)
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    duration_seconds: float = 0.0

    @property
    def success(self) -> bool:
        return self.failed == 0
