"""Jacobian-symmetry exactness test and closed-form potential reconstruction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..concurrency import parallel_map
from ..errors import DimensionError, NotExactError
from ..gaussian import Scalar
from ..poly_core import BallDomain, Poly, PolyField, as_exact_point, is_exact_point
from ..sampling import SampleConfig, domain_points

logger = structlog.get_logger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class Witness:
    """Sample point where the worst residual is largest, and |residual| there."""

    point: Tuple[complex, ...]
    value: float


@dataclass
class ExactnessReport:
    """Symmetry residuals ∂F_j/∂z_k − ∂F_k/∂z_j for every pair j < k."""

    verdict: str
    dimension: int
    residuals: Dict[Pair, Poly]
    residual_sups: Dict[Pair, float] = field(default_factory=dict)
    worst_pair: Optional[Pair] = None
    witness: Optional[Witness] = None
    seed: Optional[int] = None

    @property
    def is_exact(self) -> bool:
        return self.verdict == "exact"


def differential(p: Poly) -> PolyField:
    """dp = (∂p/∂z_1, ..., ∂p/∂z_n)."""
    return PolyField(p.dimension, tuple(p.partial_derivative(k) for k in range(1, p.dimension + 1)))


potential_map = differential


def _residual(F: PolyField, pair: Pair) -> Poly:
    j, k = pair
    return F.component(j).partial_derivative(k) - F.component(k).partial_derivative(j)


def check_exact(
    F: PolyField,
    samples: Optional[SampleConfig] = None,
    *,
    domain: Optional[BallDomain] = None,
    parallel: Optional[bool] = None,
) -> ExactnessReport:
    """Symbolic exactness test; the verdict depends on the residual polynomials only.

    For a non-exact field the residuals are sampled over ``domain`` (unit polydisc by
    default) to report a witness point.
    """
    samples = samples or SampleConfig()
    n = F.dimension
    pairs: List[Pair] = list(itertools.combinations(range(1, n + 1), 2))
    residual_list = parallel_map(lambda pair: _residual(F, pair), pairs, label="residuals", parallel=parallel)
    residuals = dict(zip(pairs, residual_list))
    exact = all(r.is_zero() for r in residual_list)

    report = ExactnessReport(
        verdict="exact" if exact else "not_exact",
        dimension=n,
        residuals=residuals,
        residual_sups={pair: 0.0 for pair in pairs},
        seed=samples.seed,
    )
    if not exact:
        domain = domain or BallDomain.unit(n)
        if domain.dimension != n:
            raise DimensionError(f"domain of dimension {domain.dimension} for a field of dimension {n}")
        points = domain_points(domain, samples)
        best = -1.0
        for pair in pairs:
            residual = residuals[pair]
            if residual.is_zero():
                continue
            magnitudes = np.abs(residual.evaluate_many(points))
            idx = int(np.argmax(magnitudes))
            value = float(magnitudes[idx])
            report.residual_sups[pair] = value
            if value > best:
                best = value
                report.worst_pair = pair
                report.witness = Witness(tuple(complex(c) for c in points[idx]), value)

    logger.info(
        "exactness_checked",
        dimension=n,
        verdict=report.verdict,
        worst_pair=report.worst_pair,
        seed=report.seed,
    )
    return report


def _origin(n: int) -> Tuple[Scalar, ...]:
    return (0,) * n


def reconstruct_potential(F: PolyField, a: Optional[Sequence[Scalar]] = None) -> Poly:
    """The potential g with dg = F and g(a) = 0.

    Works degree by degree around ``a``: with Q(w) = F(a + w), the degree-m part of
    g(a + w) is (1/m)·Σ_j w_j·Q_j(w) restricted to degree m. Exact fields get an
    exact centre (floats are converted from their binary value).
    """
    center = _origin(F.dimension) if a is None else tuple(a)
    if len(center) != F.dimension:
        raise DimensionError(f"centre has length {len(center)}, expected {F.dimension}")
    report = check_exact(F)
    if not report.is_exact:
        raise NotExactError(
            f"field is not exact: residual at pair {report.worst_pair} does not vanish",
            report=report,
        )
    if F.exact:
        center = as_exact_point(center)

    n = F.dimension
    shifted = [component.recenter(center) for component in F.components]
    w = [Poly.variable(n, k) for k in range(1, n + 1)]
    euler = Poly.zero(n, exact=F.exact and is_exact_point(center))
    for wj, qj in zip(w, shifted):
        euler = euler + wj * qj

    local = Poly.zero(n, exact=euler.exact)
    for degree, part in euler.homogeneous_components().items():
        local = local + part.scale(Fraction(1, degree) if euler.exact else 1.0 / degree)
    potential = local.recenter(tuple(-c for c in center))

    logger.info(
        "potential_reconstructed",
        dimension=n,
        degree=potential.degree(),
        terms=len(potential.terms),
    )
    return potential


def is_potential_of(
    g: Poly,
    F: PolyField,
    a: Optional[Sequence[Scalar]] = None,
    tol: float = 1e-12,
) -> bool:
    """dg = F and g(a) = 0; exact comparison when everything is exact."""
    center = _origin(F.dimension) if a is None else tuple(a)
    dg = differential(g)
    value = g.evaluate(center)
    if g.exact and F.exact and is_exact_point(center):
        return dg == F and not value
    return dg.almost_equal(F, tol) and abs(value) <= tol
