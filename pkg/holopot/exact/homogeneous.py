"""Exactness of homogeneous fields through the symmetric bilinear map B_Q.

For Q with (m-1)-homogeneous components, B_Q(x, y) = y∘d(x∘Q) is an
(m-2)-homogeneous polynomial, and Q is a differential iff B_Q is symmetric. The test
here evaluates B_Q on basis pairs by polarization (no partial derivatives), so it is an
independent route to the same verdict as :func:`~holopot.exact.jacobian.check_exact`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
import structlog

from ..concurrency import parallel_map
from ..errors import DimensionError, HomogeneityError
from ..gaussian import Scalar
from ..models import BilinearBoundReport
from ..multilinear import SymmetricFormView, compose_point, partial_diagonal
from ..poly_core import BallDomain, Poly, PolyField
from ..sampling import SampleConfig, domain_points, unit_directions
from ..settings import MAX_POLARIZATION_ARITY
from .jacobian import differential

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class HomogeneousExactness:
    """Outcome of the bilinear-symmetry test.

    On success ``potential`` is the m-homogeneous P with dP = Q. On failure
    ``witness_pair`` holds the 1-based indices (a, b) of the basis vectors x = e_a,
    y = e_b and ``difference`` the polynomial y∘d(x∘Q) − x∘d(y∘Q).
    """

    exact: bool
    degree: Optional[int]
    potential: Optional[Poly] = None
    witness_pair: Optional[Tuple[int, int]] = None
    difference: Optional[Poly] = None

    @property
    def witness_vectors(self) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        if self.witness_pair is None or self.difference is None:
            return None
        n = self.difference.dimension
        a, b = self.witness_pair
        return _basis(n, a), _basis(n, b)


def _basis(n: int, k: int) -> Tuple[int, ...]:
    return tuple(int(i == k - 1) for i in range(n))


def _field_degree(Q: PolyField) -> Optional[int]:
    """Common component degree; None for the zero field."""
    if Q.is_zero():
        return None
    degree = Q.homogeneous_degree()
    if degree is None:
        raise HomogeneityError("field components are not homogeneous of one common degree")
    return degree


def homogeneous_exactness(Q: PolyField, *, max_arity: int = MAX_POLARIZATION_ARITY) -> HomogeneousExactness:
    """Decide whether Q = dP for an m-homogeneous P, where Q is (m-1)-homogeneous, m ≥ 2."""
    Q = Q.to_exact()
    n = Q.dimension
    inner = _field_degree(Q)
    if inner is None:
        return HomogeneousExactness(exact=True, degree=None, potential=Poly.zero(n))
    if inner < 1:
        raise HomogeneityError("constant fields have degree m = 1; the bilinear test needs m ≥ 2")
    m = inner + 1

    forms = [SymmetricFormView(component, inner) for component in Q.components]
    for a, b in itertools.combinations(range(1, n + 1), 2):
        forward = partial_diagonal(forms[a - 1], _basis(n, b), max_arity=max_arity)
        backward = partial_diagonal(forms[b - 1], _basis(n, a), max_arity=max_arity)
        difference = (forward - backward).scale(inner)
        if not difference.is_zero():
            logger.info("homogeneous_exactness_failed", degree=m, witness_pair=(a, b))
            return HomogeneousExactness(
                exact=False,
                degree=m,
                witness_pair=(a, b),
                difference=difference,
            )

    potential = _euler_diagonal(Q).scale(Fraction(1, m))
    logger.info("homogeneous_exactness_passed", degree=m, terms=len(potential.terms))
    return HomogeneousExactness(exact=True, degree=m, potential=potential)


def _euler_diagonal(Q: PolyField) -> Poly:
    """The diagonal u ↦ A(u, ..., u) = ⟨Q(u), u⟩ = Σ_j u_j Q_j(u)."""
    total = Poly.zero(Q.dimension, exact=Q.exact)
    for k, component in enumerate(Q.components, start=1):
        total = total + Poly.variable(Q.dimension, k) * component
    return total


def bq_eval(Q: PolyField, x: Sequence[Scalar], y: Sequence[Scalar]) -> Poly:
    """B_Q(x, y) = y∘d(x∘Q), an (m-2)-homogeneous polynomial."""
    inner = _field_degree(Q)
    if inner is None:
        if len(x) != Q.dimension or len(y) != Q.dimension:
            raise DimensionError(f"vectors must have length {Q.dimension}")
        return Poly.zero(Q.dimension, exact=Q.exact)
    if inner < 1:
        raise HomogeneityError("B_Q needs components of degree at least 1")
    return compose_point(differential(compose_point(Q, x)), y)


def bq_bound_check(Q: PolyField, trials: Optional[SampleConfig] = None) -> BilinearBoundReport:
    """Sampled check of ‖B_Q‖ ≤ (m-1)·e·‖Q‖ on the unit polydisc.

    ‖Q‖ is replaced by U(Q) = Σ_j coeff_sum_bound(Q_j), an upper bound, so a
    violation can only come from a genuine failure of the inequality.
    """
    trials = trials or SampleConfig()
    n = Q.dimension
    inner = _field_degree(Q)
    upper = sum(component.coeff_sum_bound() for component in Q.components)
    if inner is None:
        return BilinearBoundReport(
            max_ratio=0.0, violations=0, trials=trials.count, degree=None, upper_bound=0.0, seed=trials.seed
        )
    if inner < 1:
        raise HomogeneityError("B_Q needs components of degree at least 1")
    m = inner + 1

    domain = BallDomain.unit(n)
    us = domain_points(domain, trials)
    xs = unit_directions(n, "sup", trials.count, trials.seed)
    ys = unit_directions(n, "sup", trials.count, (trials.seed + 1) % 2**64)
    bound_factor = (m - 1) * math.e * upper

    def ratio(index: int) -> float:
        x, y = xs[index], ys[index]
        lhs = np.abs(bq_eval(Q, list(x), list(y)).evaluate_many(us))
        scale = bound_factor * domain.norm(x) * domain.norm(y)
        return float(lhs.max(initial=0.0) / scale)

    ratios = parallel_map(ratio, range(trials.count), label="bq_bound")
    max_ratio = max(ratios, default=0.0)
    violations = sum(1 for r in ratios if r > 1.0)
    logger.info("bq_bound_checked", degree=m, max_ratio=max_ratio, violations=violations, seed=trials.seed)
    return BilinearBoundReport(
        max_ratio=max_ratio,
        violations=violations,
        trials=trials.count,
        degree=m,
        upper_bound=upper,
        seed=trials.seed,
    )
