"""Exception hierarchy shared by every holopot module."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, FrozenSet, Optional, Sequence

if TYPE_CHECKING:  # pragma: no cover
    from .exact.jacobian import ExactnessReport


class HolopotError(Exception):
    """Base class for all errors raised by the library."""


class DimensionError(HolopotError, ValueError):
    """Operands live in spaces of different dimension, or an index exceeds it."""


class IndexOutOfRangeError(HolopotError, IndexError):
    """A 1-based variable index is outside 1..n."""


class HomogeneityError(HolopotError, ValueError):
    """A polynomial or field is not homogeneous of the required degree."""


class ArityError(HolopotError, ValueError):
    """Wrong number of arguments for a symmetric form, or arity above the cap."""


class DomainViolationError(HolopotError, ValueError):
    """A point lies outside the domain, or too close to its boundary."""


class TruncationError(HolopotError, ValueError):
    """A series degree lies outside 1..M for its truncation order M."""


class DocumentError(HolopotError, ValueError):
    """A JSON document does not match the expected schema."""


class NotExactError(HolopotError):
    """Raised when a potential is requested for a field that is not a differential."""

    def __init__(
        self,
        message: str,
        report: Optional["ExactnessReport"] = None,
        degree: Optional[int] = None,
    ) -> None:
        super().__init__(message)
        self.report = report
        self.degree = degree


class NoConvergenceError(HolopotError):
    """Adaptive quadrature did not meet its tolerance."""

    def __init__(self, message: str, estimates: Sequence[Any]) -> None:
        super().__init__(message)
        self.estimates = tuple(estimates)


class ExprSyntaxError(HolopotError):
    """Malformed field expression, with its position and the tokens expected there."""

    def __init__(
        self,
        message: str,
        line: int,
        column: int,
        expected: FrozenSet[str] = frozenset(),
    ) -> None:
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class NonHolomorphicTokenError(ExprSyntaxError):
    """The expression uses a construct that is not holomorphic (conjugation, Re, |.|, ...)."""

    def __init__(self, token: str, line: int, column: int) -> None:
        self.token = token
        super().__init__(f"non-holomorphic construct '{token}'", line, column)
