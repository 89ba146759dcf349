"""
Pydantic models for data validation.
"""

from .schemas import (
    BernoulliRow,
    CaseTag,
    CellStatus,
    CongruencePrediction,
    CongruenceResult,
    DirichletCharacter,
    FiniteQuotientModule,
    FixedPointGroup,
    GridReport,
    H1Result,
    IdealHNF,
    IdealRelation,
    ProfiniteGeneratorSet,
    UnitGroupStructure,
    VerificationCell,
)

__all__ = [
    "BernoulliRow",
    "CaseTag",
    "CellStatus",
    "CongruencePrediction",
    "CongruenceResult",
    "DirichletCharacter",
    "FiniteQuotientModule",
    "FixedPointGroup",
    "GridReport",
    "H1Result",
    "IdealHNF",
    "IdealRelation",
    "ProfiniteGeneratorSet",
    "UnitGroupStructure",
    "VerificationCell",
]
