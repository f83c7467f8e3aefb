"""Sparse multivariate polynomials over C, polynomial fields, and ball domains.

Coefficients are either exact (:class:`GaussianRational`) or double-precision
``complex``. A polynomial is exact when all its coefficients are; any operation
mixing the two modes yields a float polynomial. Terms with a zero coefficient are
never stored: exact arithmetic drops exact zeros, float arithmetic drops anything
below ``FLOAT_SCRUB_RELATIVE`` times the largest magnitude among the operands.

Variable indices in the public API are 1-based, matching z1..zn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from .errors import DimensionError, DomainViolationError, IndexOutOfRangeError
from .gaussian import GaussianRational, Scalar
from .sampling import SampleConfig, domain_points
from .settings import FLOAT_SCRUB_RELATIVE

logger = structlog.get_logger(__name__)

MultiIndex = Tuple[int, ...]
Coefficient = Union[GaussianRational, complex]
NormKind = Literal["sup", "euclidean"]


def monomial_degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def grlex_key(alpha: MultiIndex) -> Tuple[int, MultiIndex]:
    """Sort key of the graded lexicographic order (use with ``reverse=True``)."""
    return (sum(alpha), alpha)


def is_exact_point(z: Sequence[Scalar]) -> bool:
    return all(GaussianRational.is_exact_value(c) for c in z)


def as_exact_point(z: Sequence[Scalar]) -> Tuple[GaussianRational, ...]:
    return tuple(GaussianRational.coerce(c) for c in z)


def _scrub(terms: Dict[MultiIndex, Coefficient], exact: bool, scale: float) -> Dict[MultiIndex, Coefficient]:
    if exact:
        return {alpha: c for alpha, c in terms.items() if c}
    threshold = FLOAT_SCRUB_RELATIVE * scale
    return {alpha: c for alpha, c in terms.items() if abs(c) > threshold}


def _max_abs(values: Iterable[Coefficient]) -> float:
    return max((abs(c) for c in values), default=0.0)


class Poly:
    """Immutable sparse polynomial in ``dimension`` complex variables."""

    def __init__(
        self,
        dimension: int,
        terms: Optional[Mapping[Sequence[int], Scalar]] = None,
        *,
        exact: Optional[bool] = None,
    ) -> None:
        if not isinstance(dimension, int) or dimension < 1:
            raise DimensionError(f"dimension must be a positive integer, got {dimension!r}")
        raw = dict(terms or {})
        if exact is None:
            exact = all(GaussianRational.is_exact_value(c) for c in raw.values())
        normalized: Dict[MultiIndex, Coefficient] = {}
        for alpha, coeff in raw.items():
            key = tuple(int(e) for e in alpha)
            if len(key) != dimension:
                raise DimensionError(
                    f"exponent {key} has length {len(key)}, expected {dimension}"
                )
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            value = GaussianRational.coerce(coeff) if exact else complex(coeff)
            if value:
                normalized[key] = normalized.get(key, 0) + value
        self._dimension = dimension
        self._exact = bool(exact)
        self._terms = _scrub(normalized, self._exact, 0.0)

    @classmethod
    def _make(cls, dimension: int, terms: Dict[MultiIndex, Coefficient], exact: bool) -> "Poly":
        poly = cls.__new__(cls)
        poly._dimension = dimension
        poly._exact = exact
        poly._terms = terms
        return poly

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, dimension: int, exact: bool = True) -> "Poly":
        return cls(dimension, {}, exact=exact)

    @classmethod
    def constant(cls, dimension: int, value: Scalar) -> "Poly":
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def variable(cls, dimension: int, k: int) -> "Poly":
        """The coordinate function z_k (1-based)."""
        _check_index(k, dimension)
        alpha = tuple(1 if j == k - 1 else 0 for j in range(dimension))
        return cls(dimension, {alpha: 1})

    @classmethod
    def monomial(cls, alpha: Sequence[int], coefficient: Scalar = 1) -> "Poly":
        return cls(len(alpha), {tuple(alpha): coefficient})

    # accessors ------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def terms(self) -> Mapping[MultiIndex, Coefficient]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> List[Tuple[MultiIndex, Coefficient]]:
        """Terms in graded lexicographic order, highest degree first."""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def coefficient(self, alpha: Sequence[int]) -> Coefficient:
        zero: Coefficient = GaussianRational(0) if self._exact else 0j
        return self._terms.get(tuple(alpha), zero)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(alpha) for alpha in self._terms), default=-1)

    def homogeneous_degree(self) -> Optional[int]:
        """The common degree of all monomials, or None if mixed or zero."""
        degrees = {sum(alpha) for alpha in self._terms}
        return degrees.pop() if len(degrees) == 1 else None

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        """Zero counts as homogeneous of every degree."""
        if not self._terms:
            return True
        found = self.homogeneous_degree()
        if found is None:
            return False
        return degree is None or found == degree

    # mode conversion ------------------------------------------------------

    def to_exact(self) -> "Poly":
        if self._exact:
            return self
        return Poly._make(
            self._dimension,
            {a: GaussianRational.coerce(c) for a, c in self._terms.items()},
            True,
        )

    def to_float(self) -> "Poly":
        if not self._exact:
            return self
        return Poly._make(self._dimension, {a: complex(c) for a, c in self._terms.items()}, False)

    # arithmetic -----------------------------------------------------------

    def _coerce_other(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, Poly):
            if other._dimension != self._dimension:
                raise DimensionError(
                    f"dimension mismatch: {self._dimension} vs {other._dimension}"
                )
            return other
        return Poly.constant(self._dimension, other)

    def __add__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = self._coerce_other(other)
        exact = self._exact and other._exact
        left = self if exact else self.to_float()
        right = other if exact else other.to_float()
        terms = dict(left._terms)
        for alpha, c in right._terms.items():
            terms[alpha] = terms[alpha] + c if alpha in terms else c
        scale = 0.0 if exact else max(_max_abs(left._terms.values()), _max_abs(right._terms.values()))
        return Poly._make(self._dimension, _scrub(terms, exact, scale), exact)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._make(self._dimension, {a: -c for a, c in self._terms.items()}, self._exact)

    def __sub__(self, other: Union["Poly", Scalar]) -> "Poly":
        return self + (-self._coerce_other(other))

    def __rsub__(self, other: Scalar) -> "Poly":
        return self._coerce_other(other) - self

    def scale(self, factor: Scalar) -> "Poly":
        if GaussianRational.is_exact_value(factor) and self._exact:
            factor = GaussianRational.coerce(factor)
            if not factor:
                return Poly.zero(self._dimension)
            return Poly._make(self._dimension, {a: c * factor for a, c in self._terms.items()}, True)
        factor = complex(factor)
        terms = {a: complex(c) * factor for a, c in self._terms.items()}
        scale = _max_abs(terms.values())
        return Poly._make(self._dimension, _scrub(terms, False, scale), False)

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce_other(other)
        exact = self._exact and other._exact
        left = self if exact else self.to_float()
        right = other if exact else other.to_float()
        terms: Dict[MultiIndex, Coefficient] = {}
        for a, ca in left._terms.items():
            for b, cb in right._terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                product = ca * cb
                terms[key] = terms[key] + product if key in terms else product
        scale = 0.0
        if not exact:
            scale = _max_abs(left._terms.values()) * _max_abs(right._terms.values())
        return Poly._make(self._dimension, _scrub(terms, exact, scale), exact)

    def __rmul__(self, other: Scalar) -> "Poly":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Poly.constant(self._dimension, 1 if self._exact else 1.0 + 0j)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self._dimension == other._dimension and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def almost_equal(self, other: "Poly", tol: float = 1e-12) -> bool:
        """Coefficient-wise comparison with tolerance relative to the largest coefficient."""
        diff = self.to_float() - other.to_float()
        scale = max(1.0, _max_abs(self._terms.values()), _max_abs(other._terms.values()))
        return _max_abs(diff._terms.values()) <= tol * scale

    # evaluation -----------------------------------------------------------

    def evaluate(self, z: Sequence[Scalar]) -> Coefficient:
        """Σ c_α z^α. Exact when the polynomial and the point are exact."""
        if len(z) != self._dimension:
            raise DimensionError(f"point has length {len(z)}, expected {self._dimension}")
        exact = self._exact and is_exact_point(z)
        point: Sequence[Coefficient] = as_exact_point(z) if exact else [complex(c) for c in z]
        powers: List[Dict[int, Coefficient]] = [{} for _ in range(self._dimension)]
        total: Coefficient = GaussianRational(0) if exact else 0j
        for alpha, coeff in self._terms.items():
            term = coeff if exact else complex(coeff)
            for j, e in enumerate(alpha):
                if e:
                    cache = powers[j]
                    if e not in cache:
                        cache[e] = point[j] ** e
                    term = term * cache[e]
            total = total + term
        return total

    __call__ = evaluate

    @cached_property
    def _float_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        items = list(self._terms.items())
        exps = np.array([alpha for alpha, _ in items], dtype=np.int64).reshape(len(items), self._dimension)
        coeffs = np.array([complex(c) for _, c in items], dtype=np.complex128)
        return exps, coeffs

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorised float evaluation at each row of an (N, n) array."""
        pts = np.asarray(points, dtype=np.complex128)
        if pts.ndim == 1:
            pts = pts.reshape(1, -1)
        if pts.shape[1] != self._dimension:
            raise DimensionError(f"points have {pts.shape[1]} columns, expected {self._dimension}")
        exps, coeffs = self._float_arrays
        if not len(coeffs):
            return np.zeros(pts.shape[0], dtype=np.complex128)
        monomials = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
        return monomials @ coeffs

    # calculus & structure -------------------------------------------------

    def partial_derivative(self, k: int) -> "Poly":
        """∂p/∂z_k by the power rule (k is 1-based)."""
        _check_index(k, self._dimension)
        idx = k - 1
        terms: Dict[MultiIndex, Coefficient] = {}
        for alpha, c in self._terms.items():
            e = alpha[idx]
            if e:
                key = alpha[:idx] + (e - 1,) + alpha[idx + 1 :]
                terms[key] = c * e
        return Poly._make(self._dimension, terms, self._exact)

    def homogeneous_components(self) -> Dict[int, "Poly"]:
        """Degree → homogeneous part, in increasing degree; empty for zero."""
        buckets: Dict[int, Dict[MultiIndex, Coefficient]] = {}
        for alpha, c in self._terms.items():
            buckets.setdefault(sum(alpha), {})[alpha] = c
        return {
            degree: Poly._make(self._dimension, buckets[degree], self._exact)
            for degree in sorted(buckets)
        }

    def coeff_sum_bound(self) -> float:
        """Σ|c_α|, an upper bound of sup |p| over the closed unit polydisc."""
        return math.fsum(abs(c) for c in self._terms.values())

    def recenter(self, a: Sequence[Scalar]) -> "Poly":
        """p̃ with p̃(w) = p(a + w), by binomial expansion one variable at a time."""
        if len(a) != self._dimension:
            raise DimensionError(f"centre has length {len(a)}, expected {self._dimension}")
        exact = self._exact and is_exact_point(a)
        shift = as_exact_point(a) if exact else [complex(c) for c in a]
        current = self if exact else self.to_float()
        terms = dict(current._terms)
        scale = 0.0 if exact else _max_abs(terms.values())
        for j, aj in enumerate(shift):
            if not aj:
                continue
            expanded: Dict[MultiIndex, Coefficient] = {}
            for alpha, c in terms.items():
                e = alpha[j]
                if not e:
                    expanded[alpha] = expanded[alpha] + c if alpha in expanded else c
                    continue
                power_of_a = [aj ** p for p in range(e + 1)]
                for k in range(e + 1):
                    key = alpha[:j] + (k,) + alpha[j + 1 :]
                    contribution = c * (math.comb(e, k) * power_of_a[e - k])
                    expanded[key] = expanded[key] + contribution if key in expanded else contribution
            if not exact:
                scale = max(scale, _max_abs(expanded.values()))
            terms = _scrub(expanded, exact, scale)
        return Poly._make(self._dimension, terms, exact)

    def compose(self, args: Sequence[Union["Poly", Scalar]], dimension: Optional[int] = None) -> "Poly":
        """Substitute ``args[j]`` for z_{j+1}; the result lives in the args' dimension."""
        if len(args) != self._dimension:
            raise DimensionError(f"need {self._dimension} substitutions, got {len(args)}")
        target = dimension
        for arg in args:
            if isinstance(arg, Poly):
                if target is None:
                    target = arg.dimension
                elif arg.dimension != target:
                    raise DimensionError("substituted polynomials differ in dimension")
        if target is None:
            raise DimensionError("compose needs a target dimension when all arguments are scalars")
        subs = [arg if isinstance(arg, Poly) else Poly.constant(target, arg) for arg in args]
        exact = self._exact and all(s.exact for s in subs)
        total = Poly.zero(target, exact=exact)
        powers: List[Dict[int, Poly]] = [{} for _ in range(self._dimension)]
        for alpha, c in self._terms.items():
            term = Poly.constant(target, c if exact else complex(c))
            for j, e in enumerate(alpha):
                if e:
                    cache = powers[j]
                    if e not in cache:
                        cache[e] = subs[j] ** e
                    term = term * cache[e]
            total = total + term
        return total

    # display --------------------------------------------------------------

    def __repr__(self) -> str:
        body = ", ".join(f"{alpha}: {c}" for alpha, c in self.sorted_terms())
        return f"Poly({self._dimension}, {{{body}}})"

    def __str__(self) -> str:
        from .expr_parser import pretty_print

        return pretty_print(self)


def _check_index(k: int, dimension: int) -> None:
    if not isinstance(k, int) or not 1 <= k <= dimension:
        raise IndexOutOfRangeError(f"variable index {k} outside 1..{dimension}")


def variables(dimension: int) -> List[Poly]:
    """[z1, ..., zn] as polynomials."""
    return [Poly.variable(dimension, k) for k in range(1, dimension + 1)]


@dataclass(frozen=True)
class PolyField:
    """A holomorphic polynomial field F = (F_1, ..., F_n): C^n → C^n ≅ (C^n)*."""

    dimension: int
    components: Tuple[Poly, ...]

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise DimensionError(f"dimension must be a positive integer, got {self.dimension!r}")
        if len(comps) != self.dimension:
            raise DimensionError(f"field needs {self.dimension} components, got {len(comps)}")
        for comp in comps:
            if comp.dimension != self.dimension:
                raise DimensionError(
                    f"component of dimension {comp.dimension} in a field of dimension {self.dimension}"
                )

    @classmethod
    def of(cls, components: Sequence[Poly]) -> "PolyField":
        return cls(len(components), tuple(components))

    @classmethod
    def zero(cls, dimension: int) -> "PolyField":
        return cls(dimension, tuple(Poly.zero(dimension) for _ in range(dimension)))

    def component(self, j: int) -> Poly:
        """F_j, 1-based."""
        _check_index(j, self.dimension)
        return self.components[j - 1]

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def degree(self) -> int:
        return max(c.degree() for c in self.components)

    def homogeneous_degree(self) -> Optional[int]:
        """Common degree of all non-zero components; None if mixed, non-homogeneous or zero."""
        degrees = set()
        for comp in self.components:
            if comp.is_zero():
                continue
            d = comp.homogeneous_degree()
            if d is None:
                return None
            degrees.add(d)
        return degrees.pop() if len(degrees) == 1 else None

    def to_exact(self) -> "PolyField":
        return PolyField(self.dimension, tuple(c.to_exact() for c in self.components))

    def to_float(self) -> "PolyField":
        return PolyField(self.dimension, tuple(c.to_float() for c in self.components))

    def evaluate(self, z: Sequence[Scalar]) -> List[Coefficient]:
        return [c.evaluate(z) for c in self.components]

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """(N, n) points → (N, n) values."""
        return np.stack([c.evaluate_many(points) for c in self.components], axis=1)

    def __add__(self, other: "PolyField") -> "PolyField":
        if other.dimension != self.dimension:
            raise DimensionError(f"dimension mismatch: {self.dimension} vs {other.dimension}")
        return PolyField(self.dimension, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "PolyField") -> "PolyField":
        return self + other.scale(-1)

    def scale(self, factor: Scalar) -> "PolyField":
        return PolyField(self.dimension, tuple(c.scale(factor) for c in self.components))

    def almost_equal(self, other: "PolyField", tol: float = 1e-12) -> bool:
        return self.dimension == other.dimension and all(
            a.almost_equal(b, tol) for a, b in zip(self.components, other.components)
        )


@dataclass(frozen=True)
class BallDomain:
    """Open ball of C^n for the sup norm (polydisc) or the euclidean norm."""

    dimension: int
    norm_kind: NormKind = "sup"
    radius: float = 1.0
    center: Tuple[complex, ...] = field(default=())

    def __post_init__(self) -> None:
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise DimensionError(f"dimension must be a positive integer, got {self.dimension!r}")
        if self.norm_kind not in ("sup", "euclidean"):
            raise ValueError(f"unknown norm kind {self.norm_kind!r}")
        if not self.radius > 0:
            raise DomainViolationError(f"radius must be positive, got {self.radius}")
        center = tuple(complex(c) for c in self.center) or (0j,) * self.dimension
        if len(center) != self.dimension:
            raise DimensionError(f"centre has length {len(center)}, expected {self.dimension}")
        object.__setattr__(self, "center", center)

    @classmethod
    def unit(cls, dimension: int, norm_kind: NormKind = "sup") -> "BallDomain":
        return cls(dimension, norm_kind)

    def norm(self, v: Sequence[complex]) -> float:
        arr = np.abs(np.asarray(v, dtype=np.complex128))
        if self.norm_kind == "sup":
            return float(arr.max(initial=0.0))
        return float(np.sqrt(np.sum(arr * arr)))

    def dual_norm(self, functional: Sequence[complex]) -> float:
        """Norm of z ↦ Σ c_j z_j: the 1-norm for sup, euclidean for euclidean."""
        arr = np.abs(np.asarray(functional, dtype=np.complex128))
        if self.norm_kind == "sup":
            return float(np.sum(arr))
        return float(np.sqrt(np.sum(arr * arr)))

    def margin(self, z: Sequence[complex]) -> float:
        """Distance from z to the boundary, negative outside."""
        offset = np.asarray(z, dtype=np.complex128) - np.asarray(self.center)
        return self.radius - self.norm(offset)

    def contains(self, z: Sequence[complex]) -> bool:
        if len(z) != self.dimension:
            raise DimensionError(f"point has length {len(z)}, expected {self.dimension}")
        return self.margin(z) > 0


def sampled_sup(p: Poly, domain: BallDomain, samples: Optional[SampleConfig] = None) -> float:
    """Lower estimate of sup |p| over the ball from the deterministic sample set."""
    if p.dimension != domain.dimension:
        raise DimensionError(f"polynomial of dimension {p.dimension} on a domain of dimension {domain.dimension}")
    if p.is_zero():
        return 0.0
    points = domain_points(domain, samples or SampleConfig())
    return float(np.max(np.abs(p.evaluate_many(points))))
