import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings

from holopot.errors import DimensionError, DocumentError
from holopot.exact import check_exact, differential
from holopot.gaussian import GaussianRational
from holopot.models import PolyFieldModel, PolyModel, SeriesFieldModel
from holopot.poly_core import Poly, PolyField, variables
from holopot.serialization import (
    dump_json,
    exactness_report_to_model,
    field_from_model,
    field_to_model,
    load_document,
    poly_from_model,
    poly_to_model,
    series_exactness_to_model,
    series_field_from_model,
    series_field_to_model,
    series_function_from_model,
    series_function_to_model,
)
from holopot.taylor_series import TruncatedSeriesField, series_check_exact, series_reconstruct

from .strategies import exact_polys

SAMPLE_DATA = Path(__file__).resolve().parent.parent / "sample_data"
z1, z2 = variables(2)


def test_poly_document_layout():
    p = GaussianRational(Fraction(1, 3), -2) * z1**2 * z2 + 5
    document = json.loads(dump_json(poly_to_model(p)))
    assert document["dimension"] == 2
    first, second = document["terms"]
    assert first["exp"] == [2, 1]
    assert first["re_exact"] == "1/3" and first["im_exact"] == "-2"
    assert first["re"] == pytest.approx(1 / 3)
    assert second == {"exp": [0, 0], "re": 5.0, "im": 0.0, "re_exact": "5", "im_exact": "0"}


def test_dump_is_byte_stable():
    F = PolyField.of([z2 - z1**2, GaussianRational(0, 1) * z1])
    text = dump_json(field_to_model(F))
    again = dump_json(field_to_model(field_from_model(load_document(text, PolyFieldModel))))
    assert text == again


@given(p=exact_polys(max_degree=5, max_terms=8))
@settings(max_examples=50, deadline=None)
def test_exact_polys_survive_json(p):
    text = dump_json(poly_to_model(p))
    assert poly_from_model(load_document(text, PolyModel)) == p


def test_float_polys_load_as_float():
    p = z1.scale(0.1) + z2.scale(2.5j)
    restored = poly_from_model(load_document(dump_json(poly_to_model(p)), PolyModel))
    assert not restored.exact
    assert restored == p


def test_repeated_exponents_are_summed():
    document = {
        "dimension": 1,
        "terms": [
            {"exp": [1], "re": 1.0, "im": 0.0},
            {"exp": [1], "re": 0.5, "im": 0.0},
        ],
    }
    p = poly_from_model(PolyModel.model_validate(document))
    assert p.coefficient((1,)) == pytest.approx(1.5)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        poly_from_model(PolyModel.model_validate({"dimension": 2, "terms": [{"exp": [1], "re": 1, "im": 0}]}))
    model = field_to_model(PolyField.of([z2, z1]))
    model.components.pop()
    with pytest.raises(DimensionError):
        field_from_model(model)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"dimension": 2}',
        '{"dimension": 0, "components": []}',
        '{"dimension": 2, "components": [{"terms": [{"exp": [1, 0], "re": "x", "im": 0}]}]}',
    ],
)
def test_invalid_documents(text):
    with pytest.raises(DocumentError):
        load_document(text, PolyFieldModel)


def test_unparseable_values_raise_document_error():
    with pytest.raises(DocumentError, match="invalid exact coefficient"):
        poly_from_model(
            PolyModel.model_validate(
                {"dimension": 1, "terms": [{"exp": [1], "re": 1, "im": 0, "re_exact": "1/0", "im_exact": "0"}]}
            )
        )
    model = series_field_to_model(TruncatedSeriesField.from_field(PolyField.of([z2, z1]), truncation_order=3))
    model.degrees = {"second": model.degrees["2"]}
    with pytest.raises(DocumentError, match="degree key"):
        series_field_from_model(model)


def test_sample_documents():
    swap = field_from_model(load_document((SAMPLE_DATA / "swap_field.json").read_text(), PolyFieldModel))
    assert swap == PolyField.of([z2, z1])
    rotation = field_from_model(load_document((SAMPLE_DATA / "rotation_field.json").read_text(), PolyFieldModel))
    assert not check_exact(rotation).is_exact

    series = series_field_from_model(
        load_document((SAMPLE_DATA / "cubic_series.json").read_text(), SeriesFieldModel)
    )
    assert series.truncation_order == 4
    assert series.flatten() == differential(z1 + z1 * z2 + z2**3)

    broken = series_field_from_model(
        load_document((SAMPLE_DATA / "broken_series.json").read_text(), SeriesFieldModel)
    )
    assert series_check_exact(broken).failing_degree == 2


def test_series_models_round_trip():
    g = TruncatedSeriesField.from_field(differential(z1 * z2 + z1**2 * z2), truncation_order=5)
    model = series_field_to_model(g)
    assert sorted(model.degrees) == ["2", "3"]
    restored = series_field_from_model(model)
    assert restored.degrees == g.degrees
    assert restored.truncation_order == 5

    f = series_reconstruct(g)
    assert series_function_from_model(series_function_to_model(f)).parts == f.parts


def test_exactness_report_model():
    model = exactness_report_to_model(check_exact(PolyField.of([z2, -z1])))
    assert model.verdict == "not_exact"
    assert model.worst_pair == (1, 2)
    (residual,) = model.residuals
    assert (residual.j, residual.k) == (1, 2)
    assert poly_from_model(residual.poly) == Poly.constant(2, 2)
    assert model.witness.value == pytest.approx(2.0)
    assert len(model.witness.z) == 2

    exact = exactness_report_to_model(check_exact(PolyField.of([z2, z1])))
    assert exact.verdict == "exact"
    assert exact.witness is None


def test_series_exactness_model():
    g = TruncatedSeriesField(2, {2: PolyField.of([z2, z1]), 3: PolyField.of([z2**2, Poly.zero(2)])})
    model = series_exactness_to_model(series_check_exact(g))
    assert model.verdict == "not_exact"
    assert model.failing_degree == 3
    assert [(d.degree, d.verdict) for d in model.degrees] == [(2, "exact"), (3, "not_exact")]
