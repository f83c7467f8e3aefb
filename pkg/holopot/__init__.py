"""Symbolic-numeric toolkit for holomorphic potentials of vector fields on balls of C^n."""

from .errors import (
    ArityError,
    DimensionError,
    DocumentError,
    DomainViolationError,
    ExprSyntaxError,
    HolopotError,
    HomogeneityError,
    IndexOutOfRangeError,
    NoConvergenceError,
    NonHolomorphicTokenError,
    NotExactError,
    TruncationError,
)
from .exact import (
    ExactnessReport,
    HomogeneousExactness,
    bq_bound_check,
    bq_eval,
    check_exact,
    differential,
    homogeneous_exactness,
    is_potential_of,
    potential_map,
    reconstruct_potential,
)
from .expr_parser import parse_field, parse_point, parse_poly, pretty_print, pretty_print_field
from .gaussian import GaussianRational
from .multilinear import (
    SymmetricFormView,
    antidifferential_form_eval,
    coefficient_route_eval,
    compose_point,
    dP_form_eval,
    partial_diagonal,
    polarize_eval,
    polarize_symbolic,
)
from .numeric_engine import (
    BlackBoxField,
    QuadratureConfig,
    bidisk_counterexample_probe,
    cauchy_riemann_residual,
    lipnorm_estimate,
    numeric_check_exact,
    numeric_partial,
    quad_gradient,
    quad_reconstruct,
)
from .poly_core import BallDomain, MultiIndex, Poly, PolyField, sampled_sup
from .sampling import SampleConfig
from .taylor_series import (
    TruncatedSeriesField,
    TruncatedSeriesFunction,
    basis_pair_check,
    bilinear_symmetry_check,
    series_check_exact,
    series_norm_diagnostic,
    series_reconstruct,
)

__all__ = [
    "ArityError",
    "BallDomain",
    "BlackBoxField",
    "DimensionError",
    "DocumentError",
    "DomainViolationError",
    "ExactnessReport",
    "ExprSyntaxError",
    "GaussianRational",
    "HolopotError",
    "HomogeneityError",
    "HomogeneousExactness",
    "IndexOutOfRangeError",
    "MultiIndex",
    "NoConvergenceError",
    "NonHolomorphicTokenError",
    "NotExactError",
    "TruncationError",
    "Poly",
    "PolyField",
    "QuadratureConfig",
    "SampleConfig",
    "SymmetricFormView",
    "TruncatedSeriesField",
    "TruncatedSeriesFunction",
    "antidifferential_form_eval",
    "basis_pair_check",
    "bidisk_counterexample_probe",
    "bilinear_symmetry_check",
    "bq_bound_check",
    "bq_eval",
    "cauchy_riemann_residual",
    "check_exact",
    "coefficient_route_eval",
    "compose_point",
    "dP_form_eval",
    "differential",
    "homogeneous_exactness",
    "is_potential_of",
    "lipnorm_estimate",
    "numeric_check_exact",
    "numeric_partial",
    "parse_field",
    "parse_point",
    "parse_poly",
    "partial_diagonal",
    "polarize_eval",
    "polarize_symbolic",
    "potential_map",
    "pretty_print",
    "pretty_print_field",
    "quad_gradient",
    "quad_reconstruct",
    "reconstruct_potential",
    "sampled_sup",
    "series_check_exact",
    "series_norm_diagnostic",
    "series_reconstruct",
]
