"""
Expression parser for command-line input.

    expr   := term (('+' | '-') term)*
    term   := ['-'] factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := 'a' | 'b' | 'a*' | 'b*' | 'u[' uint ',' uint ',' uint ']'
            | number ['i'] | 'i' | '(' expr ')'

A '*' written directly after a or b is the adjoint. Between two atoms an
explicit '*' is required, so "a*b" is rejected; write "a* * b" or "a * b".
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from qsu2.algebra.element import AlgebraElement, generators
from qsu2.corep import u
from qsu2.errors import ParameterError, ParseError

_NUMBER = re.compile(r"\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?")
_UINT = re.compile(r"\d+")


@dataclass(frozen=True)
class Number:
    value: complex


@dataclass(frozen=True)
class Generator:
    name: str  # a, b, a*, b*


@dataclass(frozen=True)
class Coefficient:
    n: int
    i: int
    j: int
    position: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Neg:
    operand: "Expression"


@dataclass(frozen=True)
class Power:
    base: "Expression"
    exponent: int


Expression = Union[Number, Generator, Coefficient, BinOp, Neg, Power]


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0

    # -- scanning ---------------------------------------------------------

    def _skip(self):
        while self.pos < len(self.source) and self.source[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.source[self.pos] if self.pos < len(self.source) else ""

    def _expect(self, char: str):
        if self._peek() != char:
            found = self._peek() or "end of input"
            raise ParseError(f"expected {char!r}, found {found!r}", self.pos)
        self.pos += 1

    def _uint(self) -> int:
        self._skip()
        match = _UINT.match(self.source, self.pos)
        if not match:
            raise ParseError("expected a nonnegative integer", self.pos)
        self.pos = match.end()
        return int(match.group())

    # -- grammar ----------------------------------------------------------

    def parse(self) -> Expression:
        if not self._peek():
            raise ParseError("empty expression", self.pos)
        node = self.expr()
        if self._peek():
            raise ParseError(f"unexpected {self._peek()!r}", self.pos)
        return node

    def expr(self) -> Expression:
        node = self.term()
        while self._peek() in ("+", "-"):
            op = self.source[self.pos]
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expression:
        if self._peek() == "-":
            self.pos += 1
            node: Expression = Neg(self.factor())
        else:
            node = self.factor()
        while self._peek() == "*":
            self.pos += 1
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expression:
        node = self.atom()
        if self._peek() == "^":
            self.pos += 1
            node = Power(node, self._uint())
        return node

    def atom(self) -> Expression:
        char = self._peek()
        start = self.pos
        if not char:
            raise ParseError("unexpected end of input", self.pos)
        if char == "(":
            self.pos += 1
            node = self.expr()
            self._expect(")")
            return node
        if char == "u" and self.source.startswith("u[", self.pos):
            self.pos += 2
            n = self._uint()
            self._expect(",")
            i = self._uint()
            self._expect(",")
            j = self._uint()
            self._expect("]")
            return Coefficient(n, i, j, start)
        if char in ("a", "b"):
            self.pos += 1
            if self.pos < len(self.source) and self.source[self.pos] == "*":
                after = self.source[self.pos + 1: self.pos + 2]
                if after and (after.isalnum() or after in "(."):
                    raise ParseError(
                        f"ambiguous '{char}*{after}': write '{char}* * {after}' for the adjoint "
                        f"or '{char} * {after}' for the product", self.pos,
                    )
                self.pos += 1
                return Generator(char + "*")
            return Generator(char)
        if char == "i":
            self.pos += 1
            return Number(1j)
        match = _NUMBER.match(self.source, self.pos)
        if match:
            self.pos = match.end()
            value = float(match.group())
            if self.source[self.pos: self.pos + 1] == "i":
                self.pos += 1
                return Number(complex(0.0, value))
            return Number(complex(value))
        raise ParseError(f"unexpected {char!r}", self.pos)


def parse(source: str) -> Expression:
    """Parse text into an expression tree; raises ParseError with the offending position."""
    return _Parser(source).parse()


def evaluate(node: Expression, q: float) -> AlgebraElement:
    if isinstance(node, Number):
        return AlgebraElement.scalar(node.value, q)
    if isinstance(node, Generator):
        a, b, a_star, b_star = generators(q)
        return {"a": a, "b": b, "a*": a_star, "b*": b_star}[node.name]
    if isinstance(node, Coefficient):
        if not (node.i <= node.n and node.j <= node.n):
            raise ParameterError(f"u[{node.n},{node.i},{node.j}] has an index above {node.n}")
        return u(node.n, node.i, node.j, q)
    if isinstance(node, Neg):
        return -evaluate(node.operand, q)
    if isinstance(node, Power):
        return evaluate(node.base, q) ** node.exponent
    left, right = evaluate(node.left, q), evaluate(node.right, q)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def parse_element(source: str, q: float) -> AlgebraElement:
    return evaluate(parse(source), q)
