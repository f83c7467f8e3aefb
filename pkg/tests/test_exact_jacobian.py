from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holopot.errors import DimensionError, NotExactError
from holopot.exact import check_exact, differential, is_potential_of, reconstruct_potential
from holopot.gaussian import GaussianRational, I
from holopot.poly_core import Poly, PolyField, variables

from .strategies import exact_fields, exact_points, exact_polys

z1, z2 = variables(2)


def test_differential_examples():
    assert differential(z1 * z2) == PolyField.of([z2, z1])
    assert differential(Poly.constant(2, 5)).is_zero()
    assert differential((z1**3).scale(Fraction(1, 3))) == PolyField.of([z1**2, Poly.zero(2)])


def test_check_exact_examples():
    report = check_exact(PolyField.of([z2, z1]))
    assert report.is_exact
    assert report.witness is None
    assert all(r.is_zero() for r in report.residuals.values())

    report = check_exact(PolyField.of([z2, -z1]))
    assert report.verdict == "not_exact"
    assert report.residuals[(1, 2)] == Poly.constant(2, 2)
    assert report.worst_pair == (1, 2)
    assert report.witness.value == pytest.approx(2.0)

    report = check_exact(PolyField.of([Poly.zero(2), z1**2]))
    assert report.residuals[(1, 2)] == -2 * z1


def test_single_variable_fields_are_exact():
    x = Poly.variable(1, 1)
    report = check_exact(PolyField.of([x**4 - 3 * x]))
    assert report.is_exact
    assert report.residuals == {}
    g = reconstruct_potential(PolyField.of([x**2]), (Fraction(1, 2),))
    assert g == (x**3 - Fraction(1, 8)).scale(Fraction(1, 3))


def test_worst_pair_ties_go_to_first_pair():
    w1, w2, w3 = variables(3)
    F = PolyField.of([w2 + w3, Poly.zero(3), Poly.zero(3)])
    report = check_exact(F)
    assert report.worst_pair == (1, 2)
    assert report.residual_sups[(2, 3)] == 0.0


def test_parallel_and_sequential_reports_agree():
    w1, w2, w3 = variables(3)
    F = PolyField.of([w2 * w3, w1 * w3 + w2, w1**2])
    sequential = check_exact(F, parallel=False)
    threaded = check_exact(F, parallel=True)
    assert sequential.residuals == threaded.residuals
    assert sequential.worst_pair == threaded.worst_pair
    assert sequential.witness == threaded.witness


def test_reconstruct_examples():
    assert reconstruct_potential(PolyField.of([z2, z1])) == z1 * z2
    assert reconstruct_potential(PolyField.zero(2), (1, I)).is_zero()
    assert reconstruct_potential(PolyField.of([z1**2, Poly.zero(2)])) == (z1**3).scale(Fraction(1, 3))


def test_reconstruct_off_origin():
    g = z1**2 * z2 + z1 + z2**3
    F = differential(g)
    a = (1, I)
    potential = reconstruct_potential(F, a)
    assert potential == g - 1
    assert is_potential_of(potential, F, a)


def test_reconstruct_float_field():
    F = PolyField.of([z2.scale(0.5), z1.scale(0.5) + 0.25])
    potential = reconstruct_potential(F)
    assert not potential.exact
    assert potential.almost_equal(z1.scale(0.5) * z2 + z2.scale(0.25))
    assert is_potential_of(potential, F)


def test_reconstruct_rejects_non_exact_field():
    with pytest.raises(NotExactError) as info:
        reconstruct_potential(PolyField.of([z2, -z1]))
    assert info.value.report is not None
    assert info.value.report.worst_pair == (1, 2)
    with pytest.raises(DimensionError):
        reconstruct_potential(PolyField.of([z2, z1]), (0,))


@given(p=exact_polys(constant_term=False, max_degree=5))
@settings(max_examples=50, deadline=None)
def test_reconstruction_inverts_differential(p):
    assert reconstruct_potential(differential(p)) == p


@given(p=exact_polys(max_degree=4), data=st.data())
@settings(max_examples=100, deadline=None)
def test_reconstruction_with_center(p, data):
    a = data.draw(exact_points(p.dimension, bound=Fraction(1, 3)))
    F = differential(p)
    g = reconstruct_potential(F, a)
    assert differential(g) == F
    assert g.evaluate(a) == 0


@given(F=exact_fields())
@settings(max_examples=40, deadline=None)
def test_verdict_matches_reconstructibility(F):
    report = check_exact(F)
    if report.is_exact:
        assert differential(reconstruct_potential(F)) == F
    else:
        assert report.witness is not None
        assert report.witness.value > 0
        with pytest.raises(NotExactError):
            reconstruct_potential(F)


def test_exact_centre_coercion_for_float_point():
    F = differential(z1**2 + z2)
    g = reconstruct_potential(F, (0.5, 0.25))
    assert g.exact
    assert g.evaluate((GaussianRational(Fraction(1, 2)), Fraction(1, 4))) == 0
