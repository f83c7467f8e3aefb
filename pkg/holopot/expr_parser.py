"""Holomorphic-by-construction expression language for polynomials and fields.

Grammar (see ``docs/grammar.md``)::

    field  := expr { ";" expr }
    expr   := term { ("+" | "-") term }
    term   := unary { "*" unary | "/" number }
    unary  := ("+" | "-") unary | power
    power  := atom [ "^" integer ]
    atom   := number | imaginary | "i" | variable | "(" expr ")"

``^`` binds tighter than unary minus, so ``-z1^2`` is ``-(z1^2)``. Decimal literals
become exact rationals. Conjugation, real/imaginary parts and absolute values are
rejected with :class:`NonHolomorphicTokenError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import structlog

from .errors import DimensionError, ExprSyntaxError, NonHolomorphicTokenError
from .gaussian import GaussianRational
from .poly_core import Coefficient, Poly, PolyField

logger = structlog.get_logger(__name__)

NON_HOLOMORPHIC_NAMES = frozenset(
    {"conj", "conjugate", "bar", "re", "im", "real", "imag", "abs", "arg", "norm", "modulus"}
)

_TOKEN_PATTERN = re.compile(
    r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<number>(?:\d+(?:\.\d+)?|\.\d+)(?:[eE][+-]?\d+)?)(?P<imag_suffix>i(?![A-Za-z0-9_]))?
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^();|])
    """,
    re.VERBOSE,
)

_OPERATOR_KINDS = {
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "/": "SLASH",
    "^": "CARET",
    "(": "LPAREN",
    ")": "RPAREN",
    ";": "SEMI",
}

_ATOM_START = frozenset({"number", "imaginary", "'i'", "variable", "'('"})
_UNARY_START = _ATOM_START | {"'+'", "'-'"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN_PATTERN.match(text, pos)
        column = pos - line_start + 1
        if match is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", line, column, _UNARY_START)
        kind = match.lastgroup
        if match.group("number") is not None:
            kind = "IMAG" if match.group("imag_suffix") else "NUMBER"
            tokens.append(Token(kind, match.group("number"), line, column))
        elif kind == "newline":
            line, line_start = line + 1, match.end()
        elif kind == "name":
            name = match.group("name")
            if re.fullmatch(r"z\d+", name):
                tokens.append(Token("VAR", name, line, column))
            elif name == "i":
                tokens.append(Token("I", name, line, column))
            elif name.lower() in NON_HOLOMORPHIC_NAMES or name.lower().startswith("conj") or name.endswith("bar"):
                raise NonHolomorphicTokenError(name, line, column)
            else:
                raise ExprSyntaxError(f"unknown identifier {name!r}", line, column, frozenset({"variable", "'i'"}))
        elif kind == "op":
            symbol = match.group("op")
            if symbol == "|":
                raise NonHolomorphicTokenError("|", line, column)
            tokens.append(Token(_OPERATOR_KINDS[symbol], symbol, line, column))
        pos = match.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# abstract syntax ------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: GaussianRational


@dataclass(frozen=True)
class Var:
    index: int
    line: int
    column: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    numerator: "Node"
    divisor: GaussianRational


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Var, Neg, BinOp, Div, Pow]


@dataclass(frozen=True)
class FieldExpr:
    """Source text and the parsed component expressions."""

    source: str
    components: Tuple[Node, ...]

    def max_variable(self) -> int:
        return max((_max_variable(node) for node in self.components), default=0)


def _max_variable(node: Node) -> int:
    if isinstance(node, Var):
        return node.index
    if isinstance(node, Num):
        return 0
    if isinstance(node, Neg):
        return _max_variable(node.operand)
    if isinstance(node, BinOp):
        return max(_max_variable(node.left), _max_variable(node.right))
    if isinstance(node, Div):
        return _max_variable(node.numerator)
    return _max_variable(node.base)


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _error(self, expected: Iterable[str]) -> ExprSyntaxError:
        token = self.current
        found = "end of input" if token.kind == "EOF" else repr(token.text)
        return ExprSyntaxError(f"unexpected {found}", token.line, token.column, frozenset(expected))

    def parse_field(self) -> List[Node]:
        components = [self.parse_expr()]
        while self.current.kind == "SEMI":
            self._advance()
            components.append(self.parse_expr())
        if self.current.kind != "EOF":
            raise self._error({"'+'", "'-'", "'*'", "'/'", "'^'", "';'", "end of input"})
        return components

    def parse_expr(self) -> Node:
        node = self.parse_term()
        while self.current.kind in ("PLUS", "MINUS"):
            op = self._advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self) -> Node:
        node = self.parse_unary()
        while self.current.kind in ("STAR", "SLASH"):
            if self._advance().kind == "STAR":
                node = BinOp("*", node, self.parse_unary())
                continue
            token = self.current
            if token.kind not in ("NUMBER", "IMAG"):
                raise self._error({"number", "imaginary"})
            self._advance()
            divisor = _literal_value(token)
            if not divisor:
                raise ExprSyntaxError("division by zero", token.line, token.column)
            node = Div(node, divisor)
        return node

    def parse_unary(self) -> Node:
        if self.current.kind == "MINUS":
            self._advance()
            return Neg(self.parse_unary())
        if self.current.kind == "PLUS":
            self._advance()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> Node:
        base = self.parse_atom()
        if self.current.kind == "CARET":
            self._advance()
            token = self.current
            if token.kind != "NUMBER" or not token.text.isdigit():
                raise self._error({"non-negative integer"})
            self._advance()
            return Pow(base, int(token.text))
        return base

    def parse_atom(self) -> Node:
        token = self.current
        if token.kind in ("NUMBER", "IMAG"):
            self._advance()
            return Num(_literal_value(token))
        if token.kind == "I":
            self._advance()
            return Num(GaussianRational(0, 1))
        if token.kind == "VAR":
            self._advance()
            return Var(int(token.text[1:]), token.line, token.column)
        if token.kind == "LPAREN":
            self._advance()
            node = self.parse_expr()
            if self.current.kind != "RPAREN":
                raise self._error({"')'", "'+'", "'-'", "'*'", "'/'", "'^'"})
            self._advance()
            return node
        raise self._error(_UNARY_START)


def _literal_value(token: Token) -> GaussianRational:
    value = Fraction(token.text)
    return GaussianRational(0, value) if token.kind == "IMAG" else GaussianRational(value)


def _lower(node: Node, dimension: int) -> Poly:
    if isinstance(node, Num):
        return Poly.constant(dimension, node.value)
    if isinstance(node, Var):
        if not 1 <= node.index <= dimension:
            raise DimensionError(
                f"variable z{node.index} at line {node.line}, column {node.column} "
                f"outside z1..z{dimension}"
            )
        return Poly.variable(dimension, node.index)
    if isinstance(node, Neg):
        return -_lower(node.operand, dimension)
    if isinstance(node, BinOp):
        left, right = _lower(node.left, dimension), _lower(node.right, dimension)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    if isinstance(node, Div):
        return _lower(node.numerator, dimension).scale(GaussianRational(1) / node.divisor)
    return _lower(node.base, dimension) ** node.exponent


def parse_expression(text: str) -> FieldExpr:
    """Parse without lowering; components are separated by ';'."""
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 1, 1, _UNARY_START)
    components = _Parser(text).parse_field()
    return FieldExpr(text, tuple(components))


def parse_field(text: str, dimension: Optional[int] = None) -> PolyField:
    """Exact polynomial field; ``dimension`` defaults to the number of components."""
    expr = parse_expression(text)
    n = dimension if dimension is not None else len(expr.components)
    if len(expr.components) != n:
        raise DimensionError(f"field in dimension {n} needs {n} components, got {len(expr.components)}")
    field = PolyField(n, tuple(_lower(node, n) for node in expr.components))
    logger.debug("field_parsed", dimension=n, degree=field.degree())
    return field


def parse_poly(text: str, dimension: Optional[int] = None) -> Poly:
    """Exact scalar polynomial; ``dimension`` defaults to the largest variable index."""
    expr = parse_expression(text)
    if len(expr.components) != 1:
        raise DimensionError(f"expected a single expression, got {len(expr.components)} components")
    n = dimension if dimension is not None else max(1, expr.max_variable())
    return _lower(expr.components[0], n)


def parse_point(text: str, dimension: Optional[int] = None) -> Tuple[GaussianRational, ...]:
    """Comma-separated constant expressions, e.g. ``"1/2, 0.25i, 1-i"``."""
    coordinates = []
    for piece in text.split(","):
        value = parse_poly(piece, 1)
        if value.degree() > 0:
            raise ExprSyntaxError("point coordinates must be constants", 1, 1, frozenset({"number"}))
        coordinates.append(GaussianRational.coerce(value.to_exact().coefficient((0,))))
    if dimension is not None and len(coordinates) != dimension:
        raise DimensionError(f"point has {len(coordinates)} coordinates, expected {dimension}")
    return tuple(coordinates)


# pretty printing ------------------------------------------------------------


def _format_real(value: Union[Fraction, float]) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return repr(float(value))


def _format_coefficient(c: Coefficient) -> Tuple[str, bool]:
    """(text, needs_parentheses) with the sign kept in front for real or imaginary values."""
    if isinstance(c, GaussianRational):
        re_part, im_part = c.re, c.im
    else:
        re_part, im_part = float(c.real), float(c.imag)
    if not im_part:
        return _format_real(re_part), False
    if not re_part:
        return f"{_format_real(im_part)}*i", False
    sign = "-" if im_part < 0 else "+"
    return f"({_format_real(re_part)}{sign}{_format_real(abs(im_part))}*i)", True


def _format_monomial(alpha: Sequence[int]) -> str:
    factors = []
    for k, e in enumerate(alpha, start=1):
        if e == 1:
            factors.append(f"z{k}")
        elif e > 1:
            factors.append(f"z{k}^{e}")
    return "*".join(factors)


def _format_term(alpha: Sequence[int], c: Coefficient) -> str:
    monomial = _format_monomial(alpha)
    coefficient, _ = _format_coefficient(c)
    if not monomial:
        return coefficient
    if coefficient in ("1", "1.0"):
        return monomial
    if coefficient in ("-1", "-1.0"):
        return f"-{monomial}"
    return f"{coefficient}*{monomial}"


def pretty_print(p: Poly) -> str:
    """Canonical text of ``p`` (graded lexicographic order) that parses back to ``p``.

    Exact coefficients print as integers or ``p/q``; float coefficients print with
    ``repr``, so they parse back to the same doubles.
    """
    pieces = [_format_term(alpha, c) for alpha, c in p.sorted_terms()]
    if not pieces:
        return "0"
    text = pieces[0]
    for piece in pieces[1:]:
        text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return text


def pretty_print_field(F: PolyField) -> str:
    return "; ".join(pretty_print(component) for component in F.components)
