import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holopot.errors import DimensionError, DomainViolationError, HolopotError, HomogeneityError, NotExactError, TruncationError
from holopot.exact import check_exact, differential
from holopot.poly_core import BallDomain, Poly, PolyField, variables
from holopot.sampling import SampleConfig
from holopot.taylor_series import (
    TruncatedSeriesField,
    TruncatedSeriesFunction,
    basis_pair_check,
    bilinear_symmetry_check,
    series_check_exact,
    series_norm_diagnostic,
    series_reconstruct,
)

from .strategies import exact_fields, exact_polys, homogeneous_fields

z1, z2 = variables(2)
ZERO = Poly.zero(2)


def _series(degrees):
    return TruncatedSeriesField(2, {m: PolyField.of(parts) for m, parts in degrees.items()})


def test_from_field_splits_by_degree():
    F = differential(z1 + z1 * z2 + z2**3)
    g = TruncatedSeriesField.from_field(F)
    assert sorted(g.degrees) == [1, 2, 3]
    assert g.degrees[1] == PolyField.of([Poly.constant(2, 1), ZERO])
    assert g.degrees[2] == PolyField.of([z2, z1])
    assert g.degrees[3] == PolyField.of([ZERO, 3 * z2**2])
    assert g.flatten() == F


def test_reconstruct_split_field():
    F = differential(z1 + z1 * z2 + z2**3)
    f = series_reconstruct(TruncatedSeriesField.from_field(F))
    assert f.parts == {1: z1, 2: z1 * z2, 3: z2**3}
    assert f.to_poly() == z1 + z1 * z2 + z2**3


def test_reconstruct_examples():
    f = series_reconstruct(_series({1: [Poly.constant(2, 1), ZERO]}))
    assert f.to_poly() == z1

    f = series_reconstruct(_series({2: [z2, z1], 3: [2 * z1 * z2, z1**2]}))
    assert f.parts == {2: z1 * z2, 3: z1**2 * z2}
    assert f.evaluate((0, 0)) == 0


def test_non_exact_degree_is_reported():
    g = _series({1: [Poly.constant(2, 1), ZERO], 2: [ZERO, z1]})
    verdicts = series_check_exact(g)
    assert not verdicts.is_exact
    assert verdicts.failing_degree == 2
    assert verdicts.reports[1].is_exact
    with pytest.raises(NotExactError) as info:
        series_reconstruct(g)
    assert info.value.degree == 2
    assert info.value.report.worst_pair == (1, 2)


def test_empty_series_is_exact():
    g = TruncatedSeriesField(3, {})
    assert series_check_exact(g).is_exact
    assert series_check_exact(g).failing_degree is None
    f = series_reconstruct(g)
    assert f.parts == {}
    assert f.to_poly().is_zero()


def test_series_field_validation():
    with pytest.raises(HomogeneityError):
        _series({2: [z1**2, ZERO]})
    with pytest.raises(TruncationError):
        _series({0: [ZERO, ZERO]})
    with pytest.raises(TruncationError):
        TruncatedSeriesField(2, {5: PolyField.of([z1**4, ZERO])}, truncation_order=4)
    with pytest.raises(DimensionError):
        TruncatedSeriesField(3, {2: PolyField.of([z2, z1])})
    with pytest.raises(TruncationError):
        TruncatedSeriesField.from_field(PolyField.of([z1**3, ZERO]), truncation_order=3)


def test_truncation_errors_are_library_value_errors():
    assert issubclass(TruncationError, HolopotError)
    assert issubclass(TruncationError, ValueError)


def test_series_function_validation():
    with pytest.raises(HomogeneityError):
        TruncatedSeriesFunction(2, {2: z1 + z1 * z2})
    with pytest.raises(TruncationError):
        TruncatedSeriesFunction(2, {0: Poly.constant(2, 1)})


def test_addition_is_degreewise():
    a = _series({2: [z2, z1]})
    b = _series({2: [z2, ZERO], 3: [z1**2, ZERO]})
    total = a + b
    assert total.degrees[2] == PolyField.of([2 * z2, z1])
    assert total.flatten() == a.flatten() + b.flatten()

    f = TruncatedSeriesFunction(2, {1: z1, 2: z1 * z2})
    g = TruncatedSeriesFunction(2, {2: -(z1 * z2)})
    assert (f + g).parts == {1: z1}
    with pytest.raises(DimensionError):
        a + TruncatedSeriesField(3, {})


def test_norm_diagnostic_holds_for_every_degree():
    P = z1 * z2 + z1**2 * z2
    g = TruncatedSeriesField.from_field(differential(P))
    f = series_reconstruct(g)
    diagnostic = series_norm_diagnostic(g, f, samples=SampleConfig(count=16))
    assert [entry.degree for entry in diagnostic.degrees] == [2, 3]
    assert all(entry.holds for entry in diagnostic.degrees)
    by_degree = {entry.degree: entry for entry in diagnostic.degrees}
    assert by_degree[2].field_upper_bound == pytest.approx(2.0)
    assert by_degree[3].field_upper_bound == pytest.approx(3.0)
    assert by_degree[2].potential_sup <= 1.0 + 1e-9
    assert diagnostic.seed == SampleConfig().seed


def test_norm_diagnostic_on_euclidean_ball():
    g = TruncatedSeriesField.from_field(differential(z1 * z2))
    f = series_reconstruct(g)
    diagnostic = series_norm_diagnostic(
        g, f, domain=BallDomain(2, "euclidean"), samples=SampleConfig(count=16)
    )
    (entry,) = diagnostic.degrees
    assert entry.holds
    assert entry.potential_sup <= 0.5 + 1e-9
    assert entry.field_sup <= 1.0 + 1e-9


def test_norm_diagnostic_scales_with_radius():
    P = z1 * z2 + z1**2 * z2
    g = TruncatedSeriesField.from_field(differential(P))
    f = series_reconstruct(g)
    diagnostic = series_norm_diagnostic(g, f, domain=BallDomain(2, radius=3.0), samples=SampleConfig(count=16))
    by_degree = {entry.degree: entry for entry in diagnostic.degrees}
    assert by_degree[2].field_upper_bound == pytest.approx(2.0 * 3.0)
    assert by_degree[3].field_upper_bound == pytest.approx(3.0 * 9.0)
    assert by_degree[3].potential_sup > 9.0
    assert all(entry.holds for entry in diagnostic.degrees)
    assert all(entry.field_sup <= entry.field_upper_bound + 1e-9 for entry in diagnostic.degrees)


def test_norm_diagnostic_rejects_shifted_ball():
    g = TruncatedSeriesField.from_field(differential(z1 * z2))
    with pytest.raises(DomainViolationError):
        series_norm_diagnostic(g, series_reconstruct(g), domain=BallDomain(2, center=(0.5, 0)))


def test_basis_pair_check():
    assert basis_pair_check(PolyField.of([z2, z1])).passed
    result = basis_pair_check(PolyField.of([ZERO, z1]))
    assert not result.passed and result.failing_pair == (1, 2)

    series = _series({2: [z2, z1], 3: [z2**2, ZERO]})
    result = basis_pair_check(series)
    assert not result.passed
    assert result.failing_degree == 3 and result.failing_pair == (1, 2)

    x = Poly.variable(1, 1)
    assert basis_pair_check(PolyField.of([x**2])).passed


@given(Q=homogeneous_fields())
@settings(max_examples=30, deadline=None)
def test_basis_pairs_agree_with_jacobian_test(Q):
    assert basis_pair_check(Q).passed == check_exact(Q).is_exact


def test_bilinear_symmetry_check():
    exact = bilinear_symmetry_check(differential(z1**2 * z2 + z2**3), trials=20, seed=3)
    assert exact.symmetric and exact.trials == 20
    assert exact.failing_vectors is None

    rotation = bilinear_symmetry_check(PolyField.of([z2, -z1]), trials=20, seed=3)
    assert not rotation.symmetric
    x, y = rotation.failing_vectors
    assert len(x) == 2 and len(y) == 2

    again = bilinear_symmetry_check(PolyField.of([z2, -z1]), trials=20, seed=3)
    assert again.failing_vectors == rotation.failing_vectors


@given(
    pq=st.integers(1, 3).flatmap(
        lambda n: st.tuples(
            exact_polys(dimension=n, max_degree=5, constant_term=False),
            exact_polys(dimension=n, max_degree=5, constant_term=False),
        )
    )
)
@settings(max_examples=40, deadline=None)
def test_reconstruction_is_additive(pq):
    p, q = pq
    a = TruncatedSeriesField.from_field(differential(p), truncation_order=6)
    b = TruncatedSeriesField.from_field(differential(q), truncation_order=6)
    total = series_reconstruct(a + b)
    assert total.to_poly() == (series_reconstruct(a) + series_reconstruct(b)).to_poly()
    assert total.to_poly() == p + q


@given(F=st.one_of(exact_fields(max_degree=3), exact_polys(max_degree=4).map(differential)))
@settings(max_examples=60, deadline=None)
def test_series_verdict_matches_flattened_field(F):
    g = TruncatedSeriesField.from_field(F, truncation_order=5)
    assert g.flatten() == F
    assert series_check_exact(g).is_exact == check_exact(g.flatten()).is_exact
