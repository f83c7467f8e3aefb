"""Degree-by-degree exactness and reconstruction for truncated series of fields.

A holomorphic field around 0 is a series Σ_m Q_m of (m-1)-homogeneous polynomial
fields, and it is a differential iff each Q_m is. Series are kept up to a truncation
order M; every statement about the retained degrees is unaffected by truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
import structlog

from .concurrency import parallel_map
from .errors import DimensionError, DomainViolationError, HomogeneityError, NotExactError, TruncationError
from .exact import ExactnessReport, check_exact, differential, homogeneous_exactness
from .gaussian import GaussianRational, Scalar
from .models import DegreeNormModel, NormDiagnosticModel
from .multilinear import compose_point
from .poly_core import BallDomain, Poly, PolyField, sampled_sup
from .sampling import SampleConfig, domain_points
from .settings import DEFAULT_SEED, DEFAULT_TRUNCATION_ORDER

logger = structlog.get_logger(__name__)


def _is_homogeneous_field(F: PolyField, degree: int) -> bool:
    return all(component.is_homogeneous(degree) for component in F.components)


@dataclass(frozen=True)
class TruncatedSeriesField:
    """The fields Q_1..Q_M of a series; Q_m has (m-1)-homogeneous components."""

    dimension: int
    degrees: Mapping[int, PolyField]
    truncation_order: int = DEFAULT_TRUNCATION_ORDER

    def __post_init__(self) -> None:
        if self.truncation_order < 1:
            raise TruncationError("truncation order must be at least 1")
        ordered: Dict[int, PolyField] = {}
        for m in sorted(self.degrees):
            F = self.degrees[m]
            if not 1 <= m <= self.truncation_order:
                raise TruncationError(f"degree {m} outside 1..{self.truncation_order}")
            if F.dimension != self.dimension:
                raise DimensionError(f"degree {m} field has dimension {F.dimension}, expected {self.dimension}")
            if not _is_homogeneous_field(F, m - 1):
                raise HomogeneityError(f"degree {m} field is not {m - 1}-homogeneous")
            ordered[m] = F
        object.__setattr__(self, "degrees", ordered)

    @classmethod
    def from_field(cls, F: PolyField, truncation_order: Optional[int] = None) -> "TruncatedSeriesField":
        """Split a polynomial field into its homogeneous parts."""
        order = truncation_order or DEFAULT_TRUNCATION_ORDER
        if F.degree() + 1 > order:
            raise TruncationError(f"field of degree {F.degree()} does not fit truncation order {order}")
        buckets: Dict[int, List[Poly]] = {}
        for j, component in enumerate(F.components):
            for degree, part in component.homogeneous_components().items():
                slots = buckets.setdefault(degree + 1, [Poly.zero(F.dimension, exact=F.exact)] * F.dimension)
                slots[j] = part
        return cls(F.dimension, {m: PolyField.of(parts) for m, parts in buckets.items()}, order)

    def items(self) -> List[Tuple[int, PolyField]]:
        return list(self.degrees.items())

    def flatten(self) -> PolyField:
        """Σ_m Q_m as a single polynomial field."""
        total = PolyField.zero(self.dimension)
        for F in self.degrees.values():
            total = total + F
        return total

    def __add__(self, other: "TruncatedSeriesField") -> "TruncatedSeriesField":
        if other.dimension != self.dimension:
            raise DimensionError(f"dimension mismatch: {self.dimension} vs {other.dimension}")
        merged = dict(self.degrees)
        for m, F in other.degrees.items():
            merged[m] = merged[m] + F if m in merged else F
        return TruncatedSeriesField(self.dimension, merged, max(self.truncation_order, other.truncation_order))


@dataclass(frozen=True)
class TruncatedSeriesFunction:
    """f = Σ_m P_m with P_m m-homogeneous and no constant term, so f(0) = 0."""

    dimension: int
    parts: Mapping[int, Poly]
    truncation_order: int = DEFAULT_TRUNCATION_ORDER

    def __post_init__(self) -> None:
        ordered: Dict[int, Poly] = {}
        for m in sorted(self.parts):
            P = self.parts[m]
            if not 1 <= m <= self.truncation_order:
                raise TruncationError(f"degree {m} outside 1..{self.truncation_order}")
            if P.dimension != self.dimension:
                raise DimensionError(f"degree {m} part has dimension {P.dimension}, expected {self.dimension}")
            if not P.is_homogeneous(m):
                raise HomogeneityError(f"degree {m} part is not {m}-homogeneous")
            ordered[m] = P
        object.__setattr__(self, "parts", ordered)

    def to_poly(self) -> Poly:
        total = Poly.zero(self.dimension)
        for P in self.parts.values():
            total = total + P
        return total

    def evaluate(self, z):
        return self.to_poly().evaluate(z)

    def __add__(self, other: "TruncatedSeriesFunction") -> "TruncatedSeriesFunction":
        if other.dimension != self.dimension:
            raise DimensionError(f"dimension mismatch: {self.dimension} vs {other.dimension}")
        merged = dict(self.parts)
        for m, P in other.parts.items():
            merged[m] = merged[m] + P if m in merged else P
        merged = {m: P for m, P in merged.items() if not P.is_zero()}
        return TruncatedSeriesFunction(self.dimension, merged, max(self.truncation_order, other.truncation_order))


@dataclass
class SeriesExactness:
    """Per-degree exactness reports, in increasing degree."""

    reports: Dict[int, ExactnessReport] = field(default_factory=dict)

    @property
    def is_exact(self) -> bool:
        return all(report.is_exact for report in self.reports.values())

    @property
    def failing_degree(self) -> Optional[int]:
        return next((m for m, report in self.reports.items() if not report.is_exact), None)


def series_check_exact(g: TruncatedSeriesField, samples: Optional[SampleConfig] = None) -> SeriesExactness:
    """check_exact on every Q_m independently; exact iff every degree is."""
    items = g.items()
    reports = parallel_map(
        lambda item: check_exact(item[1], samples, parallel=False),
        items,
        label="series_degrees",
    )
    result = SeriesExactness({m: report for (m, _), report in zip(items, reports)})
    logger.info("series_exactness_checked", degrees=len(items), failing_degree=result.failing_degree)
    return result


def _linear_part(Q1: PolyField) -> Poly:
    """P_1(z) = ⟨Q_1, z⟩ for the constant field Q_1."""
    n = Q1.dimension
    origin = (0,) * n
    total = Poly.zero(n, exact=Q1.exact)
    for k, component in enumerate(Q1.components, start=1):
        total = total + Poly.variable(n, k).scale(component.coefficient(origin))
    return total


def series_reconstruct(g: TruncatedSeriesField) -> TruncatedSeriesFunction:
    """f = Σ P_m with dP_m = Q_m for every retained degree, and f(0) = 0."""
    verdicts = series_check_exact(g)
    if not verdicts.is_exact:
        degree = verdicts.failing_degree
        raise NotExactError(
            f"series is not exact at degree {degree}",
            report=verdicts.reports[degree],
            degree=degree,
        )

    def part(item: Tuple[int, PolyField]) -> Tuple[int, Poly]:
        m, Q = item
        if m == 1:
            return m, _linear_part(Q)
        outcome = homogeneous_exactness(Q)
        if not outcome.exact:
            raise NotExactError(f"series is not exact at degree {m}", degree=m)
        return m, outcome.potential

    parts = dict(parallel_map(part, g.items(), label="series_reconstruct"))
    parts = {m: P for m, P in parts.items() if not P.is_zero()}
    logger.info("series_reconstructed", degrees=sorted(parts))
    return TruncatedSeriesFunction(g.dimension, parts, g.truncation_order)


def _field_sampled_sup(Q: PolyField, domain: BallDomain, points: np.ndarray) -> float:
    if Q.is_zero():
        return 0.0
    values = np.abs(Q.evaluate_many(points))
    if domain.norm_kind == "sup":
        duals = values.sum(axis=1)
    else:
        duals = np.sqrt(np.sum(values * values, axis=1))
    return float(duals.max(initial=0.0))


def series_norm_diagnostic(
    g: TruncatedSeriesField,
    f: TruncatedSeriesFunction,
    *,
    domain: Optional[BallDomain] = None,
    samples: Optional[SampleConfig] = None,
) -> NormDiagnosticModel:
    """Per-degree (sampled ‖P_m‖, sampled ‖Q_m‖, certified upper bound of ‖Q_m‖).

    ‖Q_m‖ is the sup of the dual norm of Q_m(u) over a ball of radius r about 0;
    r^(m-1)·Σ_j coeff_sum_bound(Q_m,j) bounds it from above. Since
    P_m(z) = ∫₀¹ ⟨Q_m(tz), z⟩ dt, ``holds`` compares the lower estimate of ‖P_m‖
    with r times that bound.
    """
    domain = domain or BallDomain.unit(g.dimension)
    if any(domain.center):
        raise DomainViolationError("norm diagnostic needs a ball centred at the origin")
    samples = samples or SampleConfig()
    points = domain_points(domain, samples)
    entries: List[DegreeNormModel] = []
    for m in sorted(set(g.degrees) | set(f.parts)):
        P = f.parts.get(m, Poly.zero(g.dimension))
        Q = g.degrees.get(m, PolyField.zero(g.dimension))
        potential_sup = sampled_sup(P, domain, samples)
        upper = domain.radius ** (m - 1) * sum(component.coeff_sum_bound() for component in Q.components)
        entries.append(
            DegreeNormModel(
                degree=m,
                potential_sup=potential_sup,
                field_sup=_field_sampled_sup(Q, domain, points),
                field_upper_bound=upper,
                holds=potential_sup <= domain.radius * upper,
            )
        )
    return NormDiagnosticModel(degrees=entries, seed=samples.seed)


@dataclass(frozen=True)
class BasisPairResult:
    passed: bool
    failing_pair: Optional[Tuple[int, int]] = None
    failing_degree: Optional[int] = None


def _basis(n: int, k: int) -> Tuple[int, ...]:
    return tuple(int(i == k - 1) for i in range(n))


def _first_failing_basis_pair(F: PolyField) -> Optional[Tuple[int, int]]:
    n = F.dimension
    for a, b in itertools.combinations(range(1, n + 1), 2):
        forward = compose_point(differential(compose_point(F, _basis(n, a))), _basis(n, b))
        backward = compose_point(differential(compose_point(F, _basis(n, b))), _basis(n, a))
        if forward != backward:
            return a, b
    return None


def basis_pair_check(g: Union[TruncatedSeriesField, PolyField]) -> BasisPairResult:
    """Symmetry e_k∘d(e_a∘g) = e_a∘d(e_k∘g) on coordinate basis pairs only."""
    if isinstance(g, PolyField):
        pair = _first_failing_basis_pair(g)
        return BasisPairResult(passed=pair is None, failing_pair=pair)
    for m, F in g.items():
        pair = _first_failing_basis_pair(F)
        if pair is not None:
            return BasisPairResult(passed=False, failing_pair=pair, failing_degree=m)
    return BasisPairResult(passed=True)


def _random_rational_vector(rng: np.random.Generator, n: int) -> Tuple[GaussianRational, ...]:
    numerators = rng.integers(-9, 10, size=(n, 2))
    denominators = rng.integers(1, 10, size=(n, 2))
    return tuple(
        GaussianRational(Fraction(int(numerators[j, 0]), int(denominators[j, 0])),
                         Fraction(int(numerators[j, 1]), int(denominators[j, 1])))
        for j in range(n)
    )


def _is_basis_vector(v: Tuple[Scalar, ...]) -> bool:
    nonzero = [c for c in v if c]
    return len(nonzero) <= 1


@dataclass(frozen=True)
class BilinearSymmetryResult:
    symmetric: bool
    trials: int
    failing_vectors: Optional[Tuple[Tuple[GaussianRational, ...], Tuple[GaussianRational, ...]]] = None


def bilinear_symmetry_check(F: PolyField, trials: int = 100, seed: Optional[int] = None) -> BilinearSymmetryResult:
    """y∘d(x∘F) = x∘d(y∘F) for random rational non-basis x, y, compared exactly."""
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    exact_field = F.to_exact()
    n = F.dimension
    done = 0
    while done < trials:
        x = _random_rational_vector(rng, n)
        y = _random_rational_vector(rng, n)
        if n > 1 and (_is_basis_vector(x) or _is_basis_vector(y)):
            continue
        done += 1
        forward = compose_point(differential(compose_point(exact_field, x)), y)
        backward = compose_point(differential(compose_point(exact_field, y)), x)
        if forward != backward:
            return BilinearSymmetryResult(symmetric=False, trials=done, failing_vectors=(x, y))
    return BilinearSymmetryResult(symmetric=True, trials=done)
