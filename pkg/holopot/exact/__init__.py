"""Exactness workflow: symmetry residuals, potentials, and the homogeneous criterion."""

from .homogeneous import (
    BilinearBoundReport,
    HomogeneousExactness,
    bq_bound_check,
    bq_eval,
    homogeneous_exactness,
)
from .jacobian import (
    ExactnessReport,
    Witness,
    check_exact,
    differential,
    is_potential_of,
    potential_map,
    reconstruct_potential,
)

__all__ = [
    "BilinearBoundReport",
    "ExactnessReport",
    "HomogeneousExactness",
    "Witness",
    "bq_bound_check",
    "bq_eval",
    "check_exact",
    "differential",
    "homogeneous_exactness",
    "is_potential_of",
    "potential_map",
    "reconstruct_potential",
]
