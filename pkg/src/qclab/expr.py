"""Tiny expression language for polynomial observables in Q and P.

Grammar (lowest to highest precedence):

    sum     := product (('+' | '-') product)*
    product := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' INTEGER)?
    atom    := 'Q' | 'P' | RATIONAL | '(' sum ')'

``RATIONAL`` is an integer or a ratio like ``3/2`` written as one literal
(no spaces around the slash).  A general ``/`` operator is rejected: the
variables do not commute and quotients are not part of the algebra.
Multiplication is noncommutative, so ``Q*P`` and ``P*Q`` are different
expressions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

Node = Union["Const", "Var", "Add", "Sub", "Mul", "Neg", "Pow"]


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str  # "Q" or "P"


@dataclass(frozen=True)
class Add:
    left: Node
    right: Node


@dataclass(frozen=True)
class Sub:
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul:
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg:
    operand: Node


@dataclass(frozen=True)
class Pow:
    base: Node
    exponent: int


class ExprError(ValueError):
    """Parse failure, carrying the 0-based character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<rat>\d+/\d+)|(?P<int>\d+)|(?P<var>[QP])|(?P<op>[-+*^()])|(?P<bad>\S))"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            break
        if m.lastgroup == "bad":
            ch = m.group("bad")
            at = m.start("bad")
            if ch == "/":
                raise ExprError(
                    "division is not supported; write rationals as a single"
                    " literal like 3/2",
                    at,
                )
            raise ExprError(f"unexpected character {ch!r}", at)
        kind = m.lastgroup or "bad"
        tokens.append(_Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.index = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self) -> _Token | None:
        tok = self.peek()
        if tok is not None:
            self.index += 1
        return tok

    def expect_op(self, text: str) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ExprError(f"expected {text!r} but input ended", len(self.src))
        if tok.kind != "op" or tok.text != text:
            raise ExprError(f"expected {text!r}, got {tok.text!r}", tok.pos)
        self.index += 1
        return tok

    def parse(self) -> Node:
        node = self.sum()
        tok = self.peek()
        if tok is not None:
            raise ExprError(f"unexpected trailing token {tok.text!r}", tok.pos)
        return node

    def sum(self) -> Node:
        node = self.product()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in "+-":
                return node
            self.index += 1
            rhs = self.product()
            node = Add(node, rhs) if tok.text == "+" else Sub(node, rhs)

    def product(self) -> Node:
        node = self.unary()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text != "*":
                return node
            self.index += 1
            node = Mul(node, self.unary())

    def unary(self) -> Node:
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == "-":
            self.index += 1
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        tok = self.peek()
        if tok is None or tok.kind != "op" or tok.text != "^":
            return base
        self.index += 1
        exp_tok = self.peek()
        if exp_tok is None:
            raise ExprError("expected an integer exponent after '^'", len(self.src))
        if exp_tok.kind != "int":
            raise ExprError(
                f"exponent must be a nonnegative integer, got {exp_tok.text!r}",
                exp_tok.pos,
            )
        self.index += 1
        return Pow(base, int(exp_tok.text))

    def atom(self) -> Node:
        tok = self.next()
        if tok is None:
            raise ExprError("expected an operand but input ended", len(self.src))
        if tok.kind == "var":
            return Var(tok.text)
        if tok.kind == "int":
            return Const(Fraction(int(tok.text)))
        if tok.kind == "rat":
            num, den = tok.text.split("/")
            if int(den) == 0:
                raise ExprError("rational literal has zero denominator", tok.pos)
            return Const(Fraction(int(num), int(den)))
        if tok.kind == "op" and tok.text == "(":
            node = self.sum()
            self.expect_op(")")
            return node
        raise ExprError(f"unexpected token {tok.text!r}", tok.pos)


def parse_expr(src: str) -> Node:
    """Parse a polynomial expression in Q and P into an AST.

    Raises :class:`ExprError` with the offending character position on any
    malformed input, including the unsupported ``/`` operator.
    """
    if not src.strip():
        raise ExprError("empty expression", 0)
    return _Parser(src).parse()


def evaluate_numeric(node: Node, q, p):
    """Evaluate the tree with numpy semantics.

    ``q`` and ``p`` may be scalars or arrays; products use elementwise ``*``
    so this is the commutative (phase-space) reading of the expression.
    """
    if isinstance(node, Const):
        return float(node.value)
    if isinstance(node, Var):
        return q if node.name == "Q" else p
    if isinstance(node, Neg):
        return -evaluate_numeric(node.operand, q, p)
    if isinstance(node, Add):
        return evaluate_numeric(node.left, q, p) + evaluate_numeric(node.right, q, p)
    if isinstance(node, Sub):
        return evaluate_numeric(node.left, q, p) - evaluate_numeric(node.right, q, p)
    if isinstance(node, Mul):
        return evaluate_numeric(node.left, q, p) * evaluate_numeric(node.right, q, p)
    if isinstance(node, Pow):
        return evaluate_numeric(node.base, q, p) ** node.exponent
    raise TypeError(f"unsupported expression node {type(node).__name__}")


def evaluate_matrix(node: Node, q: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Evaluate the tree with matrix products, preserving factor order."""
    n = q.shape[0]
    if isinstance(node, Const):
        return complex(node.value) * np.eye(n, dtype=complex)
    if isinstance(node, Var):
        return np.asarray(q if node.name == "Q" else p, dtype=complex)
    if isinstance(node, Neg):
        return -evaluate_matrix(node.operand, q, p)
    if isinstance(node, Add):
        return evaluate_matrix(node.left, q, p) + evaluate_matrix(node.right, q, p)
    if isinstance(node, Sub):
        return evaluate_matrix(node.left, q, p) - evaluate_matrix(node.right, q, p)
    if isinstance(node, Mul):
        return evaluate_matrix(node.left, q, p) @ evaluate_matrix(node.right, q, p)
    if isinstance(node, Pow):
        return np.linalg.matrix_power(evaluate_matrix(node.base, q, p), node.exponent)
    raise TypeError(f"unsupported expression node {type(node).__name__}")


def differentiate(node: Node, var: str) -> Node:
    """Formal partial derivative treating Q and P as commuting symbols."""
    if isinstance(node, Const):
        return Const(Fraction(0))
    if isinstance(node, Var):
        return Const(Fraction(1 if node.name == var else 0))
    if isinstance(node, Neg):
        return Neg(differentiate(node.operand, var))
    if isinstance(node, Add):
        return Add(differentiate(node.left, var), differentiate(node.right, var))
    if isinstance(node, Sub):
        return Sub(differentiate(node.left, var), differentiate(node.right, var))
    if isinstance(node, Mul):
        return Add(
            Mul(differentiate(node.left, var), node.right),
            Mul(node.left, differentiate(node.right, var)),
        )
    if isinstance(node, Pow):
        if node.exponent == 0:
            return Const(Fraction(0))
        return Mul(
            Mul(Const(Fraction(node.exponent)), Pow(node.base, node.exponent - 1)),
            differentiate(node.base, var),
        )
    raise TypeError(f"unsupported expression node {type(node).__name__}")


def random_expr(rng: np.random.Generator, max_degree: int = 3, max_terms: int = 4) -> Node:
    """Draw a random polynomial as a sum of noncommutative monomial words.

    Each term is a rational coefficient times a word over {Q, P} of length
    at most ``max_degree``, so the draw exercises arbitrary letter orders.
    """
    n_terms = int(rng.integers(1, max_terms + 1))
    node: Node | None = None
    for _ in range(n_terms):
        num = int(rng.integers(-6, 7))
        den = int(rng.integers(1, 5))
        term: Node = Const(Fraction(num, den))
        length = int(rng.integers(0, max_degree + 1))
        for _ in range(length):
            letter = Var("Q" if rng.integers(0, 2) == 0 else "P")
            term = Mul(term, letter)
        node = term if node is None else Add(node, term)
    assert node is not None
    return node


def format_expr(node: Node) -> str:
    """Render a tree back to source, fully parenthesized inside products."""
    if isinstance(node, Const):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"-({format_expr(node.operand)})"
    if isinstance(node, Add):
        return f"{format_expr(node.left)} + {format_expr(node.right)}"
    if isinstance(node, Sub):
        return f"{format_expr(node.left)} - ({format_expr(node.right)})"
    if isinstance(node, Mul):
        return f"({format_expr(node.left)})*({format_expr(node.right)})"
    if isinstance(node, Pow):
        return f"({format_expr(node.base)})^{node.exponent}"
    raise TypeError(f"unsupported expression node {type(node).__name__}")
