"""Numerical tools for holomorphic fields known only through an evaluation callback.

Covers potential reconstruction by adaptive Gauss–Legendre quadrature of the line
integral g(z) = ∫₀¹ Σ_j F_j(a + t(z − a))·(z_j − a_j) dt, finite-difference and
Cauchy-circle partial derivatives, the sampled symmetry test, Lipschitz-constant
estimates, and the bidisk probe of a bounded F₁ whose natural completion is unbounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
import structlog
from numpy.polynomial.legendre import leggauss

from .concurrency import parallel_map
from .errors import DimensionError, DomainViolationError, IndexOutOfRangeError, NoConvergenceError
from .models import (
    BidiskProbeReport,
    LipschitzEstimate,
    NumericExactnessReport,
    NumericResidualModel,
    SampleConfigModel,
    WitnessModel,
)
from .poly_core import BallDomain, Poly, PolyField
from .sampling import SampleConfig, domain_points
from .settings import (
    BIDISK_ANGLE_STEPS,
    BIDISK_RADIAL_FRACTIONS,
    CAUCHY_POINTS,
    CAUCHY_RADIUS_FACTOR,
    DEFAULT_DERIVATIVE_STEP,
    DERIVATIVE_STEP_FACTOR,
    LIPSCHITZ_PAIR_STEP_FACTOR,
    LIPSCHITZ_PAIRWISE_POINTS,
    MAX_WORKERS,
    NUMERIC_EXACT_TOLERANCE,
)

logger = structlog.get_logger(__name__)

ScalarFunction = Callable[[np.ndarray], complex]
BatchFunction = Callable[[np.ndarray], np.ndarray]

_STENCIL_OFFSETS = np.array([-2.0, -1.0, 1.0, 2.0])
_STENCIL_WEIGHTS = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0


@dataclass(frozen=True)
class BlackBoxField:
    """A holomorphic field F: domain → C^n given by a callback.

    ``evaluate`` maps one point to n values. ``evaluate_batch``, when given, maps an
    (N, n) array to an (N, n) array and is preferred. Set ``thread_safe=False`` if
    the callback must not be called concurrently.
    """

    dimension: int
    evaluate: Callable[[np.ndarray], Sequence[complex]]
    domain: BallDomain
    evaluate_batch: Optional[BatchFunction] = None
    thread_safe: bool = True

    def __post_init__(self) -> None:
        if self.domain.dimension != self.dimension:
            raise DimensionError(
                f"domain of dimension {self.domain.dimension} for a field of dimension {self.dimension}"
            )

    @classmethod
    def from_poly_field(cls, F: PolyField, domain: Optional[BallDomain] = None) -> "BlackBoxField":
        floating = F.to_float()

        def single(z: np.ndarray) -> np.ndarray:
            return floating.evaluate_many(np.asarray(z, dtype=np.complex128).reshape(1, -1))[0]

        return cls(
            dimension=F.dimension,
            evaluate=single,
            domain=domain or BallDomain.unit(F.dimension),
            evaluate_batch=floating.evaluate_many,
        )

    def __call__(self, z: Sequence[complex]) -> np.ndarray:
        return np.asarray(self.evaluate(np.asarray(z, dtype=np.complex128)), dtype=np.complex128)

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        n = self.dimension
        pts = np.asarray(points, dtype=np.complex128).reshape(-1, n)
        if self.evaluate_batch is not None:
            return np.asarray(self.evaluate_batch(pts), dtype=np.complex128).reshape(len(pts), n)
        if not len(pts):
            return np.zeros((0, n), dtype=np.complex128)

        def run(chunk: np.ndarray) -> np.ndarray:
            return np.array([self(z) for z in chunk], dtype=np.complex128).reshape(len(chunk), n)

        chunk_count = max(1, min(MAX_WORKERS if self.thread_safe else 1, len(pts)))
        parts = parallel_map(run, np.array_split(pts, chunk_count), label="field_evaluation", parallel=self.thread_safe)
        return np.concatenate(parts, axis=0)

    def component(self, j: int) -> ScalarFunction:
        """F_j as a scalar callback (1-based)."""
        if not 1 <= j <= self.dimension:
            raise IndexOutOfRangeError(f"component index {j} outside 1..{self.dimension}")
        return lambda z: complex(self(z)[j - 1])


@dataclass(frozen=True)
class QuadratureConfig:
    """Adaptive Gauss–Legendre settings: start with ``initial_nodes`` and double."""

    initial_nodes: int = 32
    max_doublings: int = 6
    tolerance: float = 1e-10

    def __post_init__(self) -> None:
        if self.initial_nodes < 2:
            raise ValueError("initial_nodes must be at least 2")
        if self.max_doublings < 1:
            raise ValueError("max_doublings must be at least 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@lru_cache(maxsize=32)
def _unit_interval_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(nodes)
    t, weights = (x + 1.0) / 2.0, w / 2.0
    t.setflags(write=False)
    weights.setflags(write=False)
    return t, weights


def _estimate(integrand: BatchFunction, nodes: int) -> np.ndarray:
    t, weights = _unit_interval_rule(nodes)
    values = np.asarray(integrand(t), dtype=np.complex128).reshape(nodes, -1)
    return np.sum(weights[:, None] * values, axis=0)


def adaptive_gauss_legendre(integrand: BatchFunction, cfg: Optional[QuadratureConfig] = None) -> np.ndarray:
    """∫₀¹ integrand(t) dt for a vectorised integrand returning (K,) or (K, d) values.

    Node counts double until two successive estimates differ by less than
    ``tolerance·max(1, |estimate|)``.
    """
    cfg = cfg or QuadratureConfig()
    nodes = cfg.initial_nodes
    previous = _estimate(integrand, nodes)
    for _ in range(cfg.max_doublings):
        nodes *= 2
        current = _estimate(integrand, nodes)
        delta = float(np.max(np.abs(current - previous), initial=0.0))
        scale = max(1.0, float(np.max(np.abs(current), initial=0.0)))
        if delta < cfg.tolerance * scale:
            logger.debug("quadrature_converged", nodes=nodes, delta=delta)
            return current
        previous_estimate, previous = previous, current
    logger.warning("quadrature_no_convergence", nodes=nodes, delta=delta)
    raise NoConvergenceError(
        f"quadrature did not reach tolerance {cfg.tolerance} with {nodes} nodes",
        estimates=(previous_estimate, current),
    )


def _require_inside(domain: BallDomain, z: np.ndarray, name: str) -> float:
    if len(z) != domain.dimension:
        raise DimensionError(f"{name} has length {len(z)}, expected {domain.dimension}")
    margin = domain.margin(z)
    if margin <= 0:
        raise DomainViolationError(f"{name} = {tuple(z)} is not inside the domain")
    return margin


def quad_reconstruct(
    F: BlackBoxField,
    a: Sequence[complex],
    z: Sequence[complex],
    cfg: Optional[QuadratureConfig] = None,
) -> complex:
    """g(z) for the potential g of F with g(a) = 0, by quadrature along [a, z]."""
    start = np.asarray(a, dtype=np.complex128)
    end = np.asarray(z, dtype=np.complex128)
    _require_inside(F.domain, start, "a")
    _require_inside(F.domain, end, "z")
    direction = end - start
    if not np.any(direction):
        return 0j

    def integrand(t: np.ndarray) -> np.ndarray:
        values = F.evaluate_many(start[None, :] + t[:, None] * direction[None, :])
        return values @ direction

    return complex(adaptive_gauss_legendre(integrand, cfg)[0])


def _directional_derivatives(batch: BatchFunction, points: np.ndarray, steps: np.ndarray, direction: np.ndarray) -> np.ndarray:
    """Fourth-order central difference of ``batch`` along ``direction`` at every point."""
    count = len(points)
    stencil = points[None, :, :] + (_STENCIL_OFFSETS[:, None] * steps[None, :])[:, :, None] * direction[None, None, :]
    values = np.asarray(batch(stencil.reshape(-1, points.shape[1])), dtype=np.complex128)
    values = values.reshape((len(_STENCIL_OFFSETS), count) + values.shape[1:])
    combined = np.tensordot(_STENCIL_WEIGHTS, values, axes=(0, 0))
    return combined / steps.reshape((count,) + (1,) * (combined.ndim - 1))


def _jacobian(batch: BatchFunction, points: np.ndarray, steps: np.ndarray) -> np.ndarray:
    """J[p, j, k] = ∂F_j/∂z_k at points[p]."""
    n = points.shape[1]
    columns = [_directional_derivatives(batch, points, steps, np.eye(n, dtype=np.complex128)[k]) for k in range(n)]
    return np.stack(columns, axis=2)


def _margins(domain: BallDomain, points: np.ndarray) -> np.ndarray:
    offsets = np.abs(points - np.asarray(domain.center)[None, :])
    if domain.norm_kind == "sup":
        return domain.radius - offsets.max(axis=1)
    return domain.radius - np.sqrt(np.sum(offsets * offsets, axis=1))


def _row_norms(domain: BallDomain, vectors: np.ndarray) -> np.ndarray:
    magnitudes = np.abs(vectors)
    if domain.norm_kind == "sup":
        return magnitudes.max(axis=-1)
    return np.sqrt(np.sum(magnitudes * magnitudes, axis=-1))


def quad_gradient(
    F: BlackBoxField,
    a: Sequence[complex],
    z: Sequence[complex],
    cfg: Optional[QuadratureConfig] = None,
) -> np.ndarray:
    """∇g(z) from ∂g/∂z_k = ∫₀¹ [t·Σ_j (z_j − a_j)·∂F_j/∂z_k + F_k](a + t(z − a)) dt.

    Inner partials are numeric; for an exact field the result reproduces F(z).
    """
    start = np.asarray(a, dtype=np.complex128)
    end = np.asarray(z, dtype=np.complex128)
    margin = min(_require_inside(F.domain, start, "a"), _require_inside(F.domain, end, "z"))
    direction = end - start
    step = DERIVATIVE_STEP_FACTOR * margin

    def integrand(t: np.ndarray) -> np.ndarray:
        points = start[None, :] + t[:, None] * direction[None, :]
        values = F.evaluate_many(points)
        jac = _jacobian(F.evaluate_many, points, np.full(len(t), step))
        return t[:, None] * np.einsum("j,tjk->tk", direction, jac) + values

    return adaptive_gauss_legendre(integrand, cfg)


def numeric_partial(
    f: ScalarFunction,
    z: Sequence[complex],
    k: int,
    *,
    domain: Optional[BallDomain] = None,
    step: Optional[float] = None,
    method: str = "central",
) -> complex:
    """∂f/∂z_k at z (k is 1-based).

    ``central``: fourth-order difference along the real axis of z_k with step
    h = 1e-4·margin (1e-4 without a domain); error O(h⁴). ``cauchy``: mean of
    f(z + rω)/(rω) over 8 roots of unity ω, radius r = 1e-2·margin.
    """
    point = np.asarray(z, dtype=np.complex128)
    n = len(point)
    if not 1 <= k <= n:
        raise IndexOutOfRangeError(f"variable index {k} outside 1..{n}")
    margin = _require_inside(domain, point, "z") if domain is not None else None
    unit = np.zeros(n, dtype=np.complex128)
    unit[k - 1] = 1.0

    if method == "central":
        h = step or (DERIVATIVE_STEP_FACTOR * margin if margin is not None else DEFAULT_DERIVATIVE_STEP)
        if margin is not None and 2 * h >= margin:
            raise DomainViolationError(f"stencil of half-width {2 * h} leaves the domain (margin {margin})")
        total = sum(w * complex(f(point + o * h * unit)) for o, w in zip(_STENCIL_OFFSETS, _STENCIL_WEIGHTS))
        return total / h
    if method == "cauchy":
        r = step or CAUCHY_RADIUS_FACTOR * (margin if margin is not None else 1.0)
        if margin is not None and r >= margin:
            raise DomainViolationError(f"Cauchy circle of radius {r} leaves the domain (margin {margin})")
        roots = np.exp(2j * np.pi * np.arange(CAUCHY_POINTS) / CAUCHY_POINTS)
        samples = [complex(f(point + r * w * unit)) / (r * w) for w in roots]
        return complex(np.mean(samples))
    raise ValueError(f"unknown derivative method {method!r}")


def cauchy_riemann_residual(f: ScalarFunction, z: Sequence[complex], k: int, *, step: Optional[float] = None) -> float:
    """|∂f/∂y_k − i·∂f/∂x_k|, zero up to discretisation error for holomorphic f."""
    point = np.asarray(z, dtype=np.complex128)
    n = len(point)
    if not 1 <= k <= n:
        raise IndexOutOfRangeError(f"variable index {k} outside 1..{n}")
    h = step or DEFAULT_DERIVATIVE_STEP
    unit = np.zeros(n, dtype=np.complex128)
    unit[k - 1] = 1.0

    def along(direction: complex) -> complex:
        total = sum(w * complex(f(point + o * h * direction * unit)) for o, w in zip(_STENCIL_OFFSETS, _STENCIL_WEIGHTS))
        return total / h

    return abs(along(1j) - 1j * along(1.0))


def _config_model(samples: SampleConfig) -> SampleConfigModel:
    return SampleConfigModel(seed=samples.seed, count=samples.count, radial_schedule=list(samples.radial_schedule))


def _witness(point: np.ndarray, value: float) -> WitnessModel:
    return WitnessModel(z=[(float(c.real), float(c.imag)) for c in point], value=value)


def numeric_check_exact(
    F: BlackBoxField,
    samples: Optional[SampleConfig] = None,
    *,
    tolerance: float = NUMERIC_EXACT_TOLERANCE,
) -> NumericExactnessReport:
    """Largest sampled |∂F_j/∂z_k − ∂F_k/∂z_j|; exact at tolerance when below ``tolerance``."""
    samples = samples or SampleConfig.interior()
    n = F.dimension
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    report = NumericExactnessReport(
        verdict="exact_at_tolerance",
        tolerance=tolerance,
        seed=samples.seed,
        config=_config_model(samples),
    )
    if not pairs:
        logger.info("numeric_exactness_checked", dimension=n, verdict=report.verdict, pairs=0)
        return report

    points = domain_points(F.domain, samples)
    steps = DERIVATIVE_STEP_FACTOR * _margins(F.domain, points)
    jac = _jacobian(F.evaluate_many, points, steps)

    best_value, best_index = -1.0, 0
    for j, k in pairs:
        residual = np.abs(jac[:, j - 1, k - 1] - jac[:, k - 1, j - 1])
        idx = int(np.argmax(residual))
        value = float(residual[idx])
        report.residuals.append(NumericResidualModel(j=j, k=k, sampled_sup=value))
        if value > best_value:
            best_value, best_index = value, idx
            report.worst_pair = (j, k)
    report.max_residual = best_value
    if best_value >= tolerance:
        report.verdict = "not_exact"
        report.witness = _witness(points[best_index], best_value)

    logger.info(
        "numeric_exactness_checked",
        dimension=n,
        verdict=report.verdict,
        max_residual=report.max_residual,
        seed=samples.seed,
    )
    return report


def _scalar_batch(f: Union[Poly, ScalarFunction]) -> BatchFunction:
    if isinstance(f, Poly):
        return f.to_float().evaluate_many
    return lambda points: np.array([complex(f(p)) for p in points], dtype=np.complex128)


def lipnorm_estimate(
    f: Union[Poly, ScalarFunction],
    domain: BallDomain,
    samples: Optional[SampleConfig] = None,
) -> LipschitzEstimate:
    """Two lower estimates of L(f) on the ball.

    The gradient estimate is the largest dual norm of the numeric gradient over the
    sample set. The pair estimate is the largest difference quotient over two families
    of pairs: x ± (δ/2)·v around every sample, with v a unit vector norming the
    gradient there, and all pairs among the first sample points.
    """
    samples = samples or SampleConfig()
    if isinstance(f, Poly) and f.dimension != domain.dimension:
        raise DimensionError(f"function of dimension {f.dimension} on a domain of dimension {domain.dimension}")
    batch = _scalar_batch(f)
    n = domain.dimension
    points = domain_points(domain, samples)
    margins = _margins(domain, points)

    eye = np.eye(n, dtype=np.complex128)
    gradient = np.stack(
        [_directional_derivatives(batch, points, DERIVATIVE_STEP_FACTOR * margins, eye[k]) for k in range(n)],
        axis=1,
    )
    magnitudes = np.abs(gradient)
    if domain.norm_kind == "sup":
        dual = magnitudes.sum(axis=1)
        safe = np.where(magnitudes > 0, magnitudes, 1.0)
        norming = np.where(magnitudes > 0, np.conj(gradient) / safe, 1.0)
    else:
        dual = np.sqrt(np.sum(magnitudes * magnitudes, axis=1))
        safe = np.where(dual > 0, dual, 1.0)[:, None]
        norming = np.where(dual[:, None] > 0, np.conj(gradient) / safe, eye[0][None, :])
    grad_sup = float(dual.max(initial=0.0))

    half = (LIPSCHITZ_PAIR_STEP_FACTOR * margins / 2.0)[:, None]
    plus, minus = points + half * norming, points - half * norming
    partner_quotients = np.abs(batch(plus) - batch(minus)) / _row_norms(domain, plus - minus)

    head = points[: min(LIPSCHITZ_PAIRWISE_POINTS, len(points))]
    values = batch(head)
    distances = _row_norms(domain, head[:, None, :] - head[None, :, :])
    upper = np.triu(np.ones(distances.shape, dtype=bool), k=1) & (distances > 0)
    pairwise = np.abs(values[:, None] - values[None, :])[upper] / distances[upper]

    pair_sup = float(max(partner_quotients.max(initial=0.0), pairwise.max(initial=0.0)))
    estimate = LipschitzEstimate(
        pair_quotient_sup=pair_sup,
        grad_dualnorm_sup=grad_sup,
        ratio=pair_sup / grad_sup if grad_sup > 0 else None,
        norm_kind=domain.norm_kind,
        seed=samples.seed,
        config=_config_model(samples),
    )
    logger.info(
        "lipschitz_estimated",
        pair_quotient_sup=estimate.pair_quotient_sup,
        grad_dualnorm_sup=estimate.grad_dualnorm_sup,
        norm_kind=domain.norm_kind,
        seed=samples.seed,
    )
    return estimate


def _torus_grid(radius: float) -> np.ndarray:
    angles = np.exp(2j * np.pi * np.arange(BIDISK_ANGLE_STEPS) / BIDISK_ANGLE_STEPS)
    first, second = np.meshgrid(angles, angles, indexing="ij")
    torus = np.stack([first.ravel(), second.ravel()], axis=1)
    return np.concatenate([radius * fraction * torus for fraction in BIDISK_RADIAL_FRACTIONS], axis=0)


def bidisk_counterexample_probe(radius: float, samples: Optional[SampleConfig] = None) -> BidiskProbeReport:
    """Sampled sup of F₁(z) = g(z2) and of F₂(z) = z1·g′(z2) on the bidisk of ``radius``.

    g(w) = (1 − w)·log(1 − w) is bounded on the unit disc while g′(w) = −log(1 − w) − 1
    is not, so F₁ stays bounded as the radius grows to 1 while F₂, the completion
    making (F₁, F₂) symmetric, blows up. Samples are an angle grid on scaled tori
    (including the real points) plus the seeded sample set.
    """
    if not 0.0 < radius < 1.0:
        raise DomainViolationError(f"radius must lie in (0, 1), got {radius}")
    samples = samples or SampleConfig()
    points = np.concatenate(
        [_torus_grid(radius), domain_points(BallDomain(2, "sup", radius), samples)],
        axis=0,
    )
    z1, z2 = points[:, 0], points[:, 1]
    log_term = np.log(1.0 - z2)
    f1 = (1.0 - z2) * log_term
    f2 = z1 * (-log_term - 1.0)
    report = BidiskProbeReport(
        radius=radius,
        f1_sup=float(np.max(np.abs(f1))),
        f2_sup=float(np.max(np.abs(f2))),
        closed_form_f2=float(radius * abs(-np.log1p(-radius) - 1.0)),
        sample_count=len(points),
        seed=samples.seed,
    )
    logger.info(
        "probe_completed",
        radius=radius,
        f1_sup=report.f1_sup,
        f2_sup=report.f2_sup,
        seed=samples.seed,
    )
    return report
