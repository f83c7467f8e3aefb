import numpy as np
import pytest

from holopot.poly_core import BallDomain
from holopot.sampling import SampleConfig, domain_points, sample_points, unit_directions
from holopot.settings import INTERIOR_RADIAL_SCHEDULE


@pytest.mark.parametrize("norm_kind", ["sup", "euclidean"])
def test_unit_directions_have_norm_one(norm_kind):
    directions = unit_directions(3, norm_kind, 40, seed=7)
    assert directions.shape == (40, 3)
    if norm_kind == "sup":
        norms = np.abs(directions).max(axis=1)
    else:
        norms = np.linalg.norm(directions, axis=1)
    np.testing.assert_allclose(norms, 1.0, atol=1e-12)


def test_sup_directions_alternate_with_torus_points():
    directions = unit_directions(2, "sup", 10, seed=3)
    np.testing.assert_allclose(np.abs(directions[0::2]), 1.0, atol=1e-12)


def test_same_seed_same_points_and_different_seed_differs():
    config = SampleConfig(seed=11, count=8)
    first = sample_points(2, "sup", 1.0, (0j, 0j), config)
    again = sample_points(2, "sup", 1.0, (0j, 0j), config)
    other = sample_points(2, "sup", 1.0, (0j, 0j), config.with_seed(12))
    np.testing.assert_array_equal(first, again)
    assert not np.allclose(first, other)


def test_larger_count_extends_smaller_set():
    small = domain_points(BallDomain.unit(2), SampleConfig(seed=5, count=8))
    large = domain_points(BallDomain.unit(2), SampleConfig(seed=5, count=16))
    np.testing.assert_array_equal(large[: len(small)], small)


def test_points_stay_inside_shifted_ball():
    domain = BallDomain(2, "euclidean", radius=0.5, center=(0.2, -0.1j))
    points = domain_points(domain, SampleConfig(count=32))
    assert points.shape == (32 * 11, 2)
    assert all(domain.contains(p) for p in points)


def test_sample_config_validation():
    with pytest.raises(ValueError):
        SampleConfig(seed=-1)
    with pytest.raises(ValueError):
        SampleConfig(count=0)
    with pytest.raises(ValueError):
        SampleConfig(radial_schedule=(0.5, 1.0))
    with pytest.raises(ValueError):
        SampleConfig(radial_schedule=())
    interior = SampleConfig.interior(seed=4, count=3)
    assert interior.radial_schedule == INTERIOR_RADIAL_SCHEDULE
    assert interior.size == 3 * len(INTERIOR_RADIAL_SCHEDULE)
