from .base import TwoMonoid
from .budget import BudgetMonoid, BudgetVector, bsm_plus, bsm_times
from .probability import PROB, ProbabilityMonoid, prob_plus, prob_times
from .provenance import (
    FALSE,
    PROVENANCE,
    TRUE,
    ProvenanceMonoid,
    ProvTree,
    conj,
    disj,
    is_decomposable,
    leaf,
    prov_plus,
    prov_times,
    support,
)
from .sharpsat import SatMonoid, SatVector, sat_plus, sat_times

__all__ = [
    "TwoMonoid",
    "BudgetMonoid",
    "BudgetVector",
    "bsm_plus",
    "bsm_times",
    "PROB",
    "ProbabilityMonoid",
    "prob_plus",
    "prob_times",
    "FALSE",
    "TRUE",
    "PROVENANCE",
    "ProvenanceMonoid",
    "ProvTree",
    "conj",
    "disj",
    "is_decomposable",
    "leaf",
    "prov_plus",
    "prov_times",
    "support",
    "SatMonoid",
    "SatVector",
    "sat_plus",
    "sat_times",
]
