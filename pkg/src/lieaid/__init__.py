"""Exact computation of derivation algebras, almost-inner derivations and
Tate-Shafarevich algebras Sha(g) = AID(g)/Inn(g) of finite-dimensional Lie
algebras given by structure constants."""

from .scalars import FieldElement, FieldSpec, field_enumerate, gaussian_unit_i
from .linalg import Matrix, Subspace
from .liealg import StructureTable, catalog, extend_scalars
from .derivations import (
    Derivation,
    DerivationSpaces,
    ProbePlan,
    compute_der,
    compute_inn,
    compute_spaces,
    refine_candidates,
)
from .aidcert import AidConfig, AidResult, compute_aid, compute_caid
from .sha import QuotientAlgebra, build_quotient, is_abelian

__all__ = [
    "AidConfig",
    "AidResult",
    "Derivation",
    "DerivationSpaces",
    "FieldElement",
    "FieldSpec",
    "Matrix",
    "ProbePlan",
    "QuotientAlgebra",
    "StructureTable",
    "Subspace",
    "build_quotient",
    "catalog",
    "compute_aid",
    "compute_caid",
    "compute_der",
    "compute_inn",
    "compute_spaces",
    "extend_scalars",
    "field_enumerate",
    "gaussian_unit_i",
    "is_abelian",
    "refine_candidates",
]
