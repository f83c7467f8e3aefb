"""Deterministic, seeded sample sets on balls of C^n.

Directions come from a scrambled Halton sequence, so the first ``k`` directions of a
larger set are exactly the directions of the smaller one; maxima over sample sets are
therefore non-decreasing in the count. For the sup norm, every other direction lies on
the distinguished boundary torus and the rest have one coordinate of unit modulus.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .settings import DEFAULT_RADIAL_SCHEDULE, DEFAULT_SAMPLE_COUNT, DEFAULT_SEED, INTERIOR_RADIAL_SCHEDULE

_SEED_LIMIT = 2**64


@dataclass(frozen=True)
class SampleConfig:
    """Seed, number of directions and radial schedule of a sample set."""

    seed: int = field(default_factory=lambda: DEFAULT_SEED)
    count: int = DEFAULT_SAMPLE_COUNT
    radial_schedule: Tuple[float, ...] = DEFAULT_RADIAL_SCHEDULE

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed < _SEED_LIMIT:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not isinstance(self.count, int) or self.count < 1:
            raise ValueError(f"count must be a positive integer, got {self.count!r}")
        schedule = tuple(float(r) for r in self.radial_schedule)
        if not schedule:
            raise ValueError("radial schedule must not be empty")
        if any(not 0.0 < r < 1.0 for r in schedule):
            raise ValueError(f"radii must lie in (0, 1), got {schedule}")
        object.__setattr__(self, "radial_schedule", schedule)

    @classmethod
    def interior(cls, seed: Optional[int] = None, count: Optional[int] = None) -> "SampleConfig":
        """Radii 0.1..0.9 only, leaving room for finite-difference stencils."""
        return cls(
            seed=DEFAULT_SEED if seed is None else seed,
            count=DEFAULT_SAMPLE_COUNT if count is None else count,
            radial_schedule=INTERIOR_RADIAL_SCHEDULE,
        )

    @property
    def size(self) -> int:
        return self.count * len(self.radial_schedule)

    def with_seed(self, seed: int) -> "SampleConfig":
        return SampleConfig(seed=seed, count=self.count, radial_schedule=self.radial_schedule)


def _halton(dimension: int, count: int, seed: int) -> np.ndarray:
    engine = qmc.Halton(d=2 * dimension + 1, scramble=True, seed=np.random.default_rng(seed))
    return engine.random(count)


def unit_directions(dimension: int, norm_kind: str, count: int, seed: int) -> np.ndarray:
    """``count`` points of norm exactly 1, as a (count, dimension) complex array."""
    u = _halton(dimension, count, seed)
    angles = np.exp(2j * np.pi * u[:, 1 : 2 * dimension : 2])
    if norm_kind == "euclidean":
        eps = np.finfo(float).eps
        gauss = ndtri(np.clip(u[:, : 2 * dimension], eps, 1.0 - eps))
        vectors = gauss[:, 0::2] + 1j * gauss[:, 1::2]
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        return vectors / norms

    moduli = np.sqrt(u[:, 0 : 2 * dimension : 2])
    pinned = np.minimum((u[:, 2 * dimension] * dimension).astype(int), dimension - 1)
    moduli[np.arange(count), pinned] = 1.0
    moduli[0::2, :] = 1.0
    return moduli * angles


def sample_points(dimension: int, norm_kind: str, radius: float, center: Sequence[complex], config: SampleConfig) -> np.ndarray:
    """center + radius·r·u for every direction u and every r of the schedule.

    Rows are ordered direction-major, so a larger ``count`` extends the array.
    """
    directions = unit_directions(dimension, norm_kind, config.count, config.seed)
    radii = np.asarray(config.radial_schedule, dtype=float)
    scaled = directions[:, None, :] * radii[None, :, None]
    points = scaled.reshape(-1, dimension) * radius
    return points + np.asarray(center, dtype=np.complex128)[None, :]


def domain_points(domain, config: SampleConfig) -> np.ndarray:
    """Sample set of a :class:`~holopot.poly_core.BallDomain`."""
    return sample_points(domain.dimension, domain.norm_kind, domain.radius, domain.center, config)
