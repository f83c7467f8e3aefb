"""Pydantic models describing every JSON document the toolkit reads or writes."""

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator


class TermModel(BaseModel):
    """One monomial c·z^exp of a polynomial."""

    exp: List[int] = Field(description="Exponent of each variable")
    re: float = Field(description="Real part of the coefficient")
    im: float = Field(description="Imaginary part of the coefficient")
    re_exact: Optional[str] = Field(
        default=None, description="Exact real part as a rational 'p/q', when the polynomial is exact"
    )
    im_exact: Optional[str] = Field(
        default=None, description="Exact imaginary part as a rational 'p/q', when the polynomial is exact"
    )

    @field_validator("exp")
    @classmethod
    def _non_negative(cls, value: List[int]) -> List[int]:
        if any(e < 0 for e in value):
            raise ValueError("exponents must be non-negative")
        return value


class TermsModel(BaseModel):
    """Polynomial embedded in a larger document (dimension given by the parent)."""

    terms: List[TermModel] = Field(default_factory=list, description="Terms in graded lexicographic order")


class PolyModel(TermsModel):
    """Stand-alone scalar polynomial."""

    dimension: int = Field(ge=1, description="Number of variables")


class PolyFieldModel(BaseModel):
    """Polynomial field F = (F_1, ..., F_n)."""

    dimension: int = Field(ge=1, description="Number of variables and of components")
    components: List[TermsModel] = Field(description="One polynomial per component")


class SeriesFieldModel(BaseModel):
    """Truncated series of homogeneous fields Q_m, keyed by m."""

    dimension: int = Field(ge=1)
    truncation: int = Field(ge=1, description="Highest degree m retained")
    degrees: Dict[str, PolyFieldModel] = Field(default_factory=dict)


class SeriesFunctionModel(BaseModel):
    """Truncated series of homogeneous polynomials P_m, keyed by m."""

    dimension: int = Field(ge=1)
    truncation: int = Field(ge=1)
    parts: Dict[str, TermsModel] = Field(default_factory=dict)


class SampleConfigModel(BaseModel):
    """Sample set echoed back in numeric reports."""

    seed: int
    count: int
    radial_schedule: List[float]


class WitnessModel(BaseModel):
    """Point, as [re, im] pairs, where the worst residual was largest on samples."""

    z: List[Tuple[float, float]]
    value: float


class ResidualModel(BaseModel):
    """Residual ∂F_j/∂z_k − ∂F_k/∂z_j for one pair j < k."""

    j: int
    k: int
    poly: PolyModel
    sampled_sup: float


class ExactnessReportModel(BaseModel):
    """Outcome of the symbolic exactness test."""

    verdict: Literal["exact", "not_exact"]
    residuals: List[ResidualModel] = Field(default_factory=list)
    worst_pair: Optional[Tuple[int, int]] = None
    witness: Optional[WitnessModel] = None
    seed: Optional[int] = None


class NumericResidualModel(BaseModel):
    """Largest sampled |∂F_j/∂z_k − ∂F_k/∂z_j| for one pair, from numeric partials."""

    j: int
    k: int
    sampled_sup: float


class NumericExactnessReport(BaseModel):
    """Outcome of the finite-difference exactness test of a black-box field."""

    verdict: Literal["exact_at_tolerance", "not_exact"]
    residuals: List[NumericResidualModel] = Field(default_factory=list)
    max_residual: float = 0.0
    worst_pair: Optional[Tuple[int, int]] = None
    witness: Optional[WitnessModel] = None
    tolerance: float
    seed: int
    numeric: Literal[True] = True
    config: SampleConfigModel


class LipschitzEstimate(BaseModel):
    """Two lower estimates of the Lipschitz constant L(f) = sup ‖df‖."""

    pair_quotient_sup: float = Field(description="max |f(x) − f(y)| / ‖x − y‖ over sampled pairs")
    grad_dualnorm_sup: float = Field(description="max dual norm of the numeric gradient over samples")
    ratio: Optional[float] = Field(
        default=None, description="pair_quotient_sup / grad_dualnorm_sup; null when the gradient vanishes"
    )
    norm_kind: Literal["sup", "euclidean"]
    seed: int
    numeric: Literal[True] = True
    config: SampleConfigModel


class BidiskProbeReport(BaseModel):
    """Sampled suprema of F₁ = g(z2) and of the candidate completion F₂ = z1·g′(z2)."""

    radius: float
    f1_sup: float
    f2_sup: float
    closed_form_f2: float = Field(description="|F₂(r, r)| = r·|−log(1 − r) − 1|")
    sample_count: int
    seed: int
    numeric: Literal[True] = True


class BilinearBoundReport(BaseModel):
    """Sampled check of ‖B_Q‖ ≤ (m − 1)·e·‖Q‖ with ‖Q‖ replaced by a coefficient-sum bound."""

    max_ratio: float
    violations: int
    trials: int
    degree: Optional[int]
    upper_bound: float
    seed: int


class DegreeVerdictModel(BaseModel):
    degree: int
    verdict: Literal["exact", "not_exact"]
    worst_pair: Optional[Tuple[int, int]] = None


class SeriesExactnessModel(BaseModel):
    """Per-degree verdicts for a truncated series of fields."""

    verdict: Literal["exact", "not_exact"]
    degrees: List[DegreeVerdictModel] = Field(default_factory=list)
    failing_degree: Optional[int] = None


class DegreeNormModel(BaseModel):
    degree: int
    potential_sup: float = Field(description="Sampled lower estimate of ‖P_m‖")
    field_sup: float = Field(description="Sampled lower estimate of ‖Q_m‖")
    field_upper_bound: float = Field(description="Certified upper bound of ‖Q_m‖")
    holds: bool = Field(description="potential_sup ≤ field_upper_bound")


class NormDiagnosticModel(BaseModel):
    """Per-degree evidence for ‖P_m‖ ≤ ‖Q_m‖."""

    degrees: List[DegreeNormModel] = Field(default_factory=list)
    seed: int
