"""Symmetric multilinear forms of homogeneous polynomials.

A form is never materialised as a coefficient tensor; :class:`SymmetricFormView`
evaluates P̌ on demand through the polarization identity

    P̌(x_1, ..., x_m) = 1 / (2^m m!) · Σ_{ε ∈ {±1}^m} ε_1⋯ε_m · P(Σ ε_i x_i).

Repeated arguments are grouped: a block of k equal arguments contributes
C(k, s)·(-1)^s for every count s of minus signs in the block, which is the same sum
evaluated with fewer calls to P.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar, Union

import structlog

from .errors import ArityError, DimensionError, HomogeneityError
from .gaussian import GaussianRational, Scalar
from .poly_core import Coefficient, Poly, PolyField, as_exact_point, is_exact_point, variables
from .settings import MAX_POLARIZATION_ARITY

logger = structlog.get_logger(__name__)

T = TypeVar("T")
Point = Sequence[Scalar]
PolyVector = Sequence[Union[Poly, Scalar]]


@dataclass(frozen=True)
class SymmetricFormView:
    """P̌ for an m-homogeneous polynomial P; ``arity`` is m."""

    base: Poly
    arity: int

    def __post_init__(self) -> None:
        if not isinstance(self.arity, int) or self.arity < 0:
            raise ArityError(f"arity must be a non-negative integer, got {self.arity!r}")
        if not self.base.is_homogeneous(self.arity):
            raise HomogeneityError(
                f"polynomial of degree {self.base.degree()} is not {self.arity}-homogeneous"
            )

    @classmethod
    def from_poly(cls, p: Poly, arity: Optional[int] = None) -> "SymmetricFormView":
        """View on ``p``; the zero polynomial needs an explicit arity."""
        if arity is None:
            arity = p.homogeneous_degree()
            if arity is None:
                raise HomogeneityError("polynomial is zero or not homogeneous; pass the arity explicitly")
        return cls(p, arity)

    @property
    def dimension(self) -> int:
        return self.base.dimension


def _group(args: Sequence[T], same: Callable[[T, T], bool]) -> Tuple[List[T], List[int]]:
    representatives: List[T] = []
    multiplicities: List[int] = []
    for arg in args:
        for idx, rep in enumerate(representatives):
            if same(rep, arg):
                multiplicities[idx] += 1
                break
        else:
            representatives.append(arg)
            multiplicities.append(1)
    return representatives, multiplicities


def _signed_terms(multiplicities: Sequence[int]):
    """(weight, per-group scalar) for every grouped sign pattern."""
    for minus_counts in itertools.product(*(range(k + 1) for k in multiplicities)):
        weight = 1
        coefficients = []
        for k, s in zip(multiplicities, minus_counts):
            weight *= math.comb(k, s) * (-1) ** s
            coefficients.append(k - 2 * s)
        yield weight, coefficients


def _check_arity(form: SymmetricFormView, count: int, max_arity: int) -> None:
    if count != form.arity:
        raise ArityError(f"form of arity {form.arity} applied to {count} arguments")
    if form.arity > max_arity:
        raise ArityError(
            f"arity {form.arity} exceeds the polarization cap {max_arity}; pass max_arity to override"
        )


def _normaliser(m: int) -> Fraction:
    return Fraction(1, 2**m * math.factorial(m))


def polarize_eval(
    form: SymmetricFormView,
    args: Sequence[Point],
    *,
    max_arity: int = MAX_POLARIZATION_ARITY,
) -> Coefficient:
    """P̌(args) by the signed sum; exact when P and every argument are exact."""
    _check_arity(form, len(args), max_arity)
    n = form.dimension
    for point in args:
        if len(point) != n:
            raise DimensionError(f"argument of length {len(point)}, expected {n}")
    exact = form.base.exact and all(is_exact_point(p) for p in args)
    points = [as_exact_point(p) if exact else tuple(complex(c) for c in p) for p in args]
    representatives, multiplicities = _group(points, lambda a, b: a == b)

    total: Coefficient = GaussianRational(0) if exact else 0j
    for weight, coefficients in _signed_terms(multiplicities):
        if not weight:
            continue
        combination = [
            sum((c * rep[j] for c, rep in zip(coefficients, representatives)), GaussianRational(0) if exact else 0j)
            for j in range(n)
        ]
        total = total + weight * form.base.evaluate(combination)
    scale = _normaliser(form.arity)
    return total * scale if exact else total * float(scale)


def polarize_symbolic(
    form: SymmetricFormView,
    args: Sequence[PolyVector],
    *,
    max_arity: int = MAX_POLARIZATION_ARITY,
) -> Poly:
    """The signed sum with polynomial-valued arguments.

    Each argument is a vector of n polynomials (or constants) in a common set of
    variables; the result is the polynomial u ↦ P̌(args(u)).
    """
    _check_arity(form, len(args), max_arity)
    n = form.dimension
    target = None
    for vector in args:
        if len(vector) != n:
            raise DimensionError(f"argument of length {len(vector)}, expected {n}")
        for entry in vector:
            if isinstance(entry, Poly):
                if target is None:
                    target = entry.dimension
                elif entry.dimension != target:
                    raise DimensionError("polynomial arguments differ in dimension")
    if target is None:
        target = n
    vectors = [
        tuple(entry if isinstance(entry, Poly) else Poly.constant(target, entry) for entry in vector)
        for vector in args
    ]
    representatives, multiplicities = _group(vectors, lambda a, b: a == b)

    total = Poly.zero(target, exact=form.base.exact)
    for weight, coefficients in _signed_terms(multiplicities):
        if not weight:
            continue
        combination = []
        for j in range(n):
            entry = Poly.zero(target)
            for c, rep in zip(coefficients, representatives):
                if c:
                    entry = entry + rep[j].scale(c)
            combination.append(entry)
        total = total + form.base.compose(combination, dimension=target).scale(weight)
    return total.scale(_normaliser(form.arity))


def partial_diagonal(form: SymmetricFormView, y: Point, *, max_arity: int = MAX_POLARIZATION_ARITY) -> Poly:
    """The polynomial u ↦ P̌(u, ..., u, y), for a form of arity ≥ 1."""
    if form.arity < 1:
        raise ArityError("partial diagonal needs a form of arity at least 1")
    n = form.dimension
    if len(y) != n:
        raise DimensionError(f"argument of length {len(y)}, expected {n}")
    u = variables(n)
    return polarize_symbolic(form, [u] * (form.arity - 1) + [list(y)], max_arity=max_arity)


def coefficient_route_eval(form: SymmetricFormView, args: Sequence[Point]) -> Coefficient:
    """P̌(args) from the monomial coefficients.

    For P = Σ c_α z^α, P̌(x_1..x_m) = Σ c_α (α!/m!) [t^α] Π_i ⟨x_i, t⟩, so one
    product of linear forms yields every coefficient needed.
    """
    if len(args) != form.arity:
        raise ArityError(f"form of arity {form.arity} applied to {len(args)} arguments")
    n = form.dimension
    for point in args:
        if len(point) != n:
            raise DimensionError(f"argument of length {len(point)}, expected {n}")
    exact = form.base.exact and all(is_exact_point(p) for p in args)
    product = Poly.constant(n, 1)
    for point in args:
        coords = as_exact_point(point) if exact else [complex(c) for c in point]
        product = product * Poly(n, {tuple(int(i == j) for i in range(n)): coords[j] for j in range(n)})
    m_factorial = math.factorial(form.arity)
    total: Coefficient = GaussianRational(0) if exact else 0j
    for alpha, c in form.base.terms.items():
        weight = Fraction(math.prod(math.factorial(e) for e in alpha), m_factorial)
        term = c * product.coefficient(alpha)
        total = total + (term * weight if exact else complex(term) * float(weight))
    return total


def compose_point(Q: PolyField, x: Point) -> Poly:
    """x∘Q: the polynomial u ↦ ⟨Q(u), x⟩ = Σ_j x_j Q_j(u)."""
    if len(x) != Q.dimension:
        raise DimensionError(f"vector of length {len(x)} against a field of dimension {Q.dimension}")
    total = Poly.zero(Q.dimension, exact=Q.exact)
    for xj, component in zip(x, Q.components):
        if xj:
            total = total + component.scale(xj)
    return total


def dP_form_eval(P: Poly, us: Sequence[Point], x: Point) -> Coefficient:
    """ďP(u_1, ..., u_{m-1})(x) = m·P̌(u_1, ..., u_{m-1}, x)."""
    m = P.homogeneous_degree()
    if m is None:
        if not P.is_zero():
            raise HomogeneityError("dP_form_eval needs a homogeneous polynomial")
        m = len(us) + 1
    if m < 1:
        raise HomogeneityError("dP_form_eval needs degree at least 1")
    form = SymmetricFormView(P, m)
    return m * polarize_eval(form, list(us) + [x])


def antidifferential_form_eval(Q: PolyField, args: Sequence[Point]) -> Coefficient:
    """A(u_1, ..., u_m) = Q̌(u_1, ..., u_{m-1})(u_m) for a field of (m-1)-homogeneous components."""
    m = len(args)
    if m < 1:
        raise ArityError("antidifferential form needs at least one argument")
    last = args[-1]
    if len(last) != Q.dimension:
        raise DimensionError(f"argument of length {len(last)}, expected {Q.dimension}")
    exact = Q.exact and all(is_exact_point(p) for p in args)
    total: Coefficient = GaussianRational(0) if exact else 0j
    for j, component in enumerate(Q.components):
        coordinate = last[j]
        if not coordinate:
            continue
        form = SymmetricFormView(component, m - 1)
        value = polarize_eval(form, args[:-1])
        total = total + value * (GaussianRational.coerce(coordinate) if exact else complex(coordinate))
    return total
