"""C3 function models for right-hand sides.

A right-hand side is supplied as a small expression DSL in the variable t
(constants, pi, + - * /, integer ^, exp/sin/cos) and differentiated by
third-order Taylor-mode propagation, so values and the first three
derivatives are exact to rounding rather than finite-differenced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, ExpressionSyntaxError, UnknownIdentifierError

__all__ = [
    "Jet3",
    "ExprNode",
    "parse_expr",
    "to_source",
    "eval_jet",
    "SmoothFunction",
    "sup_norm_deriv",
    "DIV_SAFETY_THRESHOLD",
    "SUP_NORM_SAFETY",
    "SUP_NORM_SAMPLES",
]

# |denominator| below this anywhere on the validation grid rejects the model
DIV_SAFETY_THRESHOLD = 1e-8
DIV_VALIDATION_SAMPLES = 1025

SUP_NORM_SAFETY = 1.05
SUP_NORM_SAMPLES = 4097

_FACTORIALS = (1.0, 1.0, 2.0, 6.0)


# --------------------------------------------------------------------------
# Taylor jets of order 3
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Jet3:
    """Value and first three Taylor coefficients at a point (c_k = f^(k)/k!).

    Coefficients may be scalars or numpy arrays of a common shape, so one
    jet propagation evaluates a whole grid at once.
    """

    c0: Union[float, np.ndarray]
    c1: Union[float, np.ndarray]
    c2: Union[float, np.ndarray]
    c3: Union[float, np.ndarray]

    def derivative(self, order: int):
        """f^(order), recovered as coefficient times order!."""
        if order not in (0, 1, 2, 3):
            raise ValueError(f"derivative order must be 0..3, got {order}")
        return (self.c0, self.c1, self.c2 * 2.0, self.c3 * 6.0)[order]

    def __add__(self, o: "Jet3") -> "Jet3":
        return Jet3(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)

    def __sub__(self, o: "Jet3") -> "Jet3":
        return Jet3(self.c0 - o.c0, self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3)

    def __neg__(self) -> "Jet3":
        return Jet3(-self.c0, -self.c1, -self.c2, -self.c3)

    def __mul__(self, o: "Jet3") -> "Jet3":
        a0, a1, a2, a3 = self.c0, self.c1, self.c2, self.c3
        b0, b1, b2, b3 = o.c0, o.c1, o.c2, o.c3
        return Jet3(
            a0 * b0,
            a0 * b1 + a1 * b0,
            a0 * b2 + a1 * b1 + a2 * b0,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        )

    def __truediv__(self, o: "Jet3") -> "Jet3":
        b0 = o.c0
        if np.any(np.abs(b0) < DIV_SAFETY_THRESHOLD):
            raise DomainError("division blow-up: |denominator| below safety threshold")
        q0 = self.c0 / b0
        q1 = (self.c1 - q0 * o.c1) / b0
        q2 = (self.c2 - q0 * o.c2 - q1 * o.c1) / b0
        q3 = (self.c3 - q0 * o.c3 - q1 * o.c2 - q2 * o.c1) / b0
        return Jet3(q0, q1, q2, q3)


def _jet_const(v, like) -> Jet3:
    z = np.zeros_like(like) if isinstance(like, np.ndarray) else 0.0
    return Jet3(v + z, z, z, z)


def jet_exp(a: Jet3) -> Jet3:
    e0 = np.exp(a.c0)
    e1 = a.c1 * e0
    e2 = (a.c1 * e1 + 2.0 * a.c2 * e0) / 2.0
    e3 = (a.c1 * e2 + 2.0 * a.c2 * e1 + 3.0 * a.c3 * e0) / 3.0
    return Jet3(e0, e1, e2, e3)


def jet_sincos(a: Jet3) -> tuple[Jet3, Jet3]:
    # sine and cosine recurrences are coupled; compute both in one pass
    s0, c0 = np.sin(a.c0), np.cos(a.c0)
    s1 = a.c1 * c0
    c1 = -a.c1 * s0
    s2 = (a.c1 * c1 + 2.0 * a.c2 * c0) / 2.0
    c2 = -(a.c1 * s1 + 2.0 * a.c2 * s0) / 2.0
    s3 = (a.c1 * c2 + 2.0 * a.c2 * c1 + 3.0 * a.c3 * c0) / 3.0
    c3 = -(a.c1 * s2 + 2.0 * a.c2 * s1 + 3.0 * a.c3 * s0) / 3.0
    return Jet3(s0, s1, s2, s3), Jet3(c0, c1, c2, c3)


def jet_ipow(a: Jet3, n: int) -> Jet3:
    if n < 0:
        return _jet_const(1.0, a.c0) / jet_ipow(a, -n)
    result = _jet_const(1.0, a.c0)
    base = a
    while n > 0:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


# --------------------------------------------------------------------------
# Expression AST
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class PiConst:
    pass


@dataclass(frozen=True)
class Unary:
    op: str  # 'neg' | 'exp' | 'sin' | 'cos'
    arg: "ExprNode"


@dataclass(frozen=True)
class Binary:
    op: str  # '+' | '-' | '*' | '/'
    left: "ExprNode"
    right: "ExprNode"


@dataclass(frozen=True)
class Power:
    base: "ExprNode"
    exponent: int


ExprNode = Union[Num, Var, PiConst, Unary, Binary, Power]

_FUNCS = ("exp", "sin", "cos")


class _Parser:
    """Recursive-descent parser for the expression grammar.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' integer)? | '-' factor
    atom   := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
    """

    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            raise ExpressionSyntaxError("unexpected input", self.pos, (repr(ch),))
        self.pos += 1

    def parse(self) -> ExprNode:
        node = self.expr()
        self._skip_ws()
        if self.pos != len(self.src):
            raise ExpressionSyntaxError("trailing input", self.pos, ("end of input",))
        return node

    def expr(self) -> ExprNode:
        node = self.term()
        while self._peek() in ("+", "-"):
            op = self.src[self.pos]
            self.pos += 1
            node = Binary(op, node, self.term())
        return node

    def term(self) -> ExprNode:
        node = self.factor()
        while self._peek() in ("*", "/"):
            op = self.src[self.pos]
            self.pos += 1
            node = Binary(op, node, self.factor())
        return node

    def factor(self) -> ExprNode:
        if self._peek() == "-":
            self.pos += 1
            return Unary("neg", self.factor())
        node = self.atom()
        if self._peek() == "^":
            self.pos += 1
            node = Power(node, self._integer())
        return node

    def _integer(self) -> int:
        self._skip_ws()
        start = self.pos
        if self._peek() == "-":
            self.pos += 1
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        text = self.src[start:self.pos]
        if not text or text == "-":
            raise ExpressionSyntaxError("bad exponent", start, ("integer",))
        return int(text)

    def atom(self) -> ExprNode:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self._expect(")")
            return node
        if ch.isdigit() or ch == ".":
            return Num(self._number())
        if ch.isalpha():
            return self._identifier()
        raise ExpressionSyntaxError(
            "unexpected input", self.pos, ("number", "'t'", "'pi'", "function", "'('"))

    def _number(self) -> float:
        start = self.pos
        seen_digit = False
        while self.pos < len(self.src) and (self.src[self.pos].isdigit() or self.src[self.pos] == "."):
            seen_digit = seen_digit or self.src[self.pos].isdigit()
            self.pos += 1
        if self.pos < len(self.src) and self.src[self.pos] in "eE":
            mark = self.pos
            self.pos += 1
            if self.pos < len(self.src) and self.src[self.pos] in "+-":
                self.pos += 1
            if self.pos < len(self.src) and self.src[self.pos].isdigit():
                while self.pos < len(self.src) and self.src[self.pos].isdigit():
                    self.pos += 1
            else:
                self.pos = mark  # not an exponent suffix after all
        text = self.src[start:self.pos]
        if not seen_digit:
            raise ExpressionSyntaxError("bad number", start, ("digits",))
        return float(text)

    def _identifier(self) -> ExprNode:
        start = self.pos
        while self.pos < len(self.src) and (self.src[self.pos].isalnum() or self.src[self.pos] == "_"):
            self.pos += 1
        name = self.src[start:self.pos]
        if name == "t":
            return Var()
        if name == "pi":
            return PiConst()
        if name in _FUNCS:
            self._expect("(")
            arg = self.expr()
            self._expect(")")
            return Unary(name, arg)
        raise UnknownIdentifierError(f"unknown identifier {name!r} at position {start}")


def parse_expr(src: str) -> ExprNode:
    """Parse expression source into an AST.

    Raises ExpressionSyntaxError or UnknownIdentifierError on bad input.
    """
    if not src or not src.strip():
        raise ExpressionSyntaxError("empty expression", 0, ("expression",))
    if not src.isascii():
        raise ExpressionSyntaxError("non-ASCII input", 0)
    return _Parser(src).parse()


def to_source(node: ExprNode) -> str:
    """Render an AST back to parseable source (fully parenthesized).

    parse_expr(to_source(ast)) is structurally identical to ast.
    """
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, PiConst):
        return "pi"
    if isinstance(node, Unary):
        if node.op == "neg":
            return f"(-{to_source(node.arg)})"
        return f"{node.op}({to_source(node.arg)})"
    if isinstance(node, Binary):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Power):
        return f"({to_source(node.base)} ^ {node.exponent})"
    raise TypeError(f"not an expression node: {node!r}")


def eval_jet(node: ExprNode, t) -> Jet3:
    """Evaluate the order-3 Taylor jet of the expression at t (scalar or array)."""
    if isinstance(node, Num):
        return _jet_const(node.value, t)
    if isinstance(node, PiConst):
        return _jet_const(math.pi, t)
    if isinstance(node, Var):
        one = np.ones_like(t) if isinstance(t, np.ndarray) else 1.0
        zero = np.zeros_like(t) if isinstance(t, np.ndarray) else 0.0
        return Jet3(t + zero, one, zero, zero)
    if isinstance(node, Unary):
        arg = eval_jet(node.arg, t)
        if node.op == "neg":
            return -arg
        if node.op == "exp":
            return jet_exp(arg)
        if node.op == "sin":
            return jet_sincos(arg)[0]
        if node.op == "cos":
            return jet_sincos(arg)[1]
        raise ValueError(f"unknown unary op {node.op!r}")
    if isinstance(node, Binary):
        left = eval_jet(node.left, t)
        right = eval_jet(node.right, t)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            return left / right
        raise ValueError(f"unknown binary op {node.op!r}")
    if isinstance(node, Power):
        return jet_ipow(eval_jet(node.base, t), node.exponent)
    raise TypeError(f"not an expression node: {node!r}")


# --------------------------------------------------------------------------
# Smooth function model
# --------------------------------------------------------------------------

class SmoothFunction:
    """A C3 function on a closed interval, evaluable with derivatives 0..3.

    Immutable after construction; safe to share across threads.
    """

    def __init__(self, ast: ExprNode, a: float, b: float):
        if not a < b:
            raise ValueError(f"domain must satisfy a < b, got [{a}, {b}]")
        self.ast = ast
        self.a = float(a)
        self.b = float(b)
        self._validate()

    @classmethod
    def from_expression(cls, src: str, a: float, b: float) -> "SmoothFunction":
        return cls(parse_expr(src), a, b)

    @classmethod
    def constant(cls, value: float, a: float, b: float) -> "SmoothFunction":
        return cls(Num(float(value)), a, b)

    def _validate(self):
        # rejects division blow-ups (and any non-finite value) on a dense sample
        grid = np.linspace(self.a, self.b, DIV_VALIDATION_SAMPLES)
        jet = eval_jet(self.ast, grid)  # raises DomainError on near-zero denominators
        for c in (jet.c0, jet.c1, jet.c2, jet.c3):
            if not np.all(np.isfinite(c)):
                raise DomainError("function model is not finite on its domain")

    def source(self) -> str:
        return to_source(self.ast)

    def jet(self, t) -> Jet3:
        return eval_jet(self.ast, t)

    def eval(self, t, order: int = 0):
        """f^(order)(t) for order in 0..3; t may be a scalar or array."""
        return self.jet(t).derivative(order)

    def __call__(self, t):
        return self.eval(t, 0)

    def __repr__(self):
        return f"SmoothFunction({self.source()!r}, [{self.a}, {self.b}])"


def sup_norm_deriv(f: SmoothFunction, order: int, a: float = None, b: float = None,
                   n_samples: int = SUP_NORM_SAMPLES,
                   safety: float = SUP_NORM_SAFETY) -> float:
    """Heuristic upper estimate of sup |f^(order)| over [a, b].

    Dense-grid max over n_samples uniform points (endpoints included),
    inflated by the safety factor. Not interval-arithmetic rigorous.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    lo = f.a if a is None else a
    hi = f.b if b is None else b
    grid = np.linspace(lo, hi, n_samples)
    vals = np.abs(np.asarray(f.eval(grid, order), dtype=float))
    return float(vals.max() * safety)
