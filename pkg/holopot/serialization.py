"""Conversion between domain objects and the JSON models in :mod:`holopot.models`."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Type, TypeVar

import structlog
from pydantic import BaseModel, ValidationError

from .errors import DimensionError, DocumentError
from .exact import ExactnessReport
from .gaussian import GaussianRational
from .models import (
    DegreeVerdictModel,
    ExactnessReportModel,
    PolyFieldModel,
    PolyModel,
    ResidualModel,
    SeriesExactnessModel,
    SeriesFieldModel,
    SeriesFunctionModel,
    TermModel,
    TermsModel,
    WitnessModel,
)
from .poly_core import Poly, PolyField
from .taylor_series import SeriesExactness, TruncatedSeriesField, TruncatedSeriesFunction

logger = structlog.get_logger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def _terms(p: Poly) -> List[TermModel]:
    terms = []
    for alpha, c in p.sorted_terms():
        value = complex(c)
        term = TermModel(exp=list(alpha), re=value.real, im=value.imag)
        if isinstance(c, GaussianRational):
            term.re_exact = str(c.re)
            term.im_exact = str(c.im)
        terms.append(term)
    return terms


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as error:
        raise DocumentError(f"invalid exact coefficient {text!r}") from error


def _degree_key(key: str) -> int:
    try:
        return int(key)
    except ValueError as error:
        raise DocumentError(f"degree key {key!r} is not an integer") from error


def _poly_from_terms(terms: List[TermModel], dimension: int) -> Poly:
    exact = all(t.re_exact is not None and t.im_exact is not None for t in terms)
    coefficients: Dict[tuple, object] = {}
    for term in terms:
        if len(term.exp) != dimension:
            raise DimensionError(f"exponent {term.exp} has length {len(term.exp)}, expected {dimension}")
        key = tuple(term.exp)
        if exact:
            value = GaussianRational(_fraction(term.re_exact), _fraction(term.im_exact))
        else:
            value = complex(term.re, term.im)
        coefficients[key] = coefficients[key] + value if key in coefficients else value
    return Poly(dimension, coefficients, exact=exact)


def poly_to_model(p: Poly) -> PolyModel:
    return PolyModel(dimension=p.dimension, terms=_terms(p))


def poly_from_model(model: PolyModel) -> Poly:
    return _poly_from_terms(model.terms, model.dimension)


def field_to_model(F: PolyField) -> PolyFieldModel:
    return PolyFieldModel(
        dimension=F.dimension,
        components=[TermsModel(terms=_terms(component)) for component in F.components],
    )


def field_from_model(model: PolyFieldModel) -> PolyField:
    if len(model.components) != model.dimension:
        raise DimensionError(f"field of dimension {model.dimension} has {len(model.components)} components")
    return PolyField(
        model.dimension,
        tuple(_poly_from_terms(component.terms, model.dimension) for component in model.components),
    )


def series_field_to_model(g: TruncatedSeriesField) -> SeriesFieldModel:
    return SeriesFieldModel(
        dimension=g.dimension,
        truncation=g.truncation_order,
        degrees={str(m): field_to_model(F) for m, F in g.items()},
    )


def series_field_from_model(model: SeriesFieldModel) -> TruncatedSeriesField:
    degrees = {_degree_key(m): field_from_model(F) for m, F in model.degrees.items()}
    return TruncatedSeriesField(model.dimension, degrees, model.truncation)


def series_function_to_model(f: TruncatedSeriesFunction) -> SeriesFunctionModel:
    return SeriesFunctionModel(
        dimension=f.dimension,
        truncation=f.truncation_order,
        parts={str(m): TermsModel(terms=_terms(P)) for m, P in f.parts.items()},
    )


def series_function_from_model(model: SeriesFunctionModel) -> TruncatedSeriesFunction:
    parts = {_degree_key(m): _poly_from_terms(P.terms, model.dimension) for m, P in model.parts.items()}
    return TruncatedSeriesFunction(model.dimension, parts, model.truncation)


def exactness_report_to_model(report: ExactnessReport) -> ExactnessReportModel:
    residuals = [
        ResidualModel(
            j=j,
            k=k,
            poly=poly_to_model(poly),
            sampled_sup=report.residual_sups.get((j, k), 0.0),
        )
        for (j, k), poly in report.residuals.items()
    ]
    witness: Optional[WitnessModel] = None
    if report.witness is not None:
        witness = WitnessModel(
            z=[(c.real, c.imag) for c in report.witness.point],
            value=report.witness.value,
        )
    return ExactnessReportModel(
        verdict=report.verdict,
        residuals=residuals,
        worst_pair=report.worst_pair,
        witness=witness,
        seed=report.seed,
    )


def series_exactness_to_model(result: SeriesExactness) -> SeriesExactnessModel:
    return SeriesExactnessModel(
        verdict="exact" if result.is_exact else "not_exact",
        degrees=[
            DegreeVerdictModel(degree=m, verdict=report.verdict, worst_pair=report.worst_pair)
            for m, report in result.reports.items()
        ],
        failing_degree=result.failing_degree,
    )


def dump_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2)


def load_document(text: str, model_type: Type[ModelT]) -> ModelT:
    """Validate a JSON document against ``model_type``."""
    try:
        return model_type.model_validate_json(text)
    except ValidationError as error:
        logger.warning("document_rejected", schema=model_type.__name__, errors=error.error_count())
        raise DocumentError(f"invalid {model_type.__name__} document: {error}") from error
