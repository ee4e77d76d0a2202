"""
Recursive-descent parser for polynomial expressions over a chart.

Grammar (whitespace insignificant):

    EXPR     := TERM (('+'|'-') TERM)*
    TERM     := '-'? FACTOR ('*' FACTOR)*
    FACTOR   := BASE ('^' UINT)?
    BASE     := RATIONAL | COORD | '(' EXPR ')'
    RATIONAL := '-'? UINT ('/' UINT)?

Parsing yields a small AST first. ``Node.to_poly`` expands it into a
canonical ``Poly``; ``Node.evaluate`` walks the tree directly and is kept
independent of the polynomial engine so tests can use it as an oracle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from utils.errors import ExponentError, ExpressionSyntaxError, UnknownIdentifierError
from utils.symexpr import ChartSpace, Poly

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(.))", re.DOTALL)

_OPERATORS = set('+-*/^()')


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'ident', 'op' or 'end'
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match.group(0).strip() == '':
            break
        start = match.start(match.lastindex)
        number, ident, other = match.groups()
        if number is not None:
            tokens.append(Token('num', number, start))
        elif ident is not None:
            tokens.append(Token('ident', ident, start))
        elif other in _OPERATORS:
            tokens.append(Token('op', other, start))
        else:
            raise ExpressionSyntaxError(f"Unexpected character '{other}'", start)
        pos = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


# --- AST -------------------------------------------------------------------

class Node:
    def to_poly(self, space: ChartSpace) -> Poly:
        raise NotImplementedError

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        raise NotImplementedError


@dataclass(frozen=True)
class Number(Node):
    value: Fraction

    def to_poly(self, space):
        return Poly.constant(space, self.value)

    def evaluate(self, point):
        return self.value


@dataclass(frozen=True)
class Coord(Node):
    name: str
    index: int

    def to_poly(self, space):
        return space.coordinate(self.index)

    def evaluate(self, point):
        return Fraction(point[self.index])


@dataclass(frozen=True)
class Neg(Node):
    operand: Node

    def to_poly(self, space):
        return -self.operand.to_poly(space)

    def evaluate(self, point):
        return -self.operand.evaluate(point)


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # '+', '-' or '*'
    left: Node
    right: Node

    def to_poly(self, space):
        a = self.left.to_poly(space)
        b = self.right.to_poly(space)
        if self.op == '+':
            return a + b
        if self.op == '-':
            return a - b
        return a * b

    def evaluate(self, point):
        a = self.left.evaluate(point)
        b = self.right.evaluate(point)
        if self.op == '+':
            return a + b
        if self.op == '-':
            return a - b
        return a * b


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int

    def to_poly(self, space):
        return self.base.to_poly(space) ** self.exponent

    def evaluate(self, point):
        return self.base.evaluate(point) ** self.exponent


# --- parser ----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, space: ChartSpace):
        self.tokens = tokenize(text)
        self.pos = 0
        self.space = space

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def at_op(self, symbol: str) -> bool:
        return self.current.kind == 'op' and self.current.text == symbol

    def expect_op(self, symbol: str) -> Token:
        if not self.at_op(symbol):
            raise ExpressionSyntaxError(
                f"Expected '{symbol}', found {self._describe(self.current)}",
                self.current.position
            )
        return self.advance()

    @staticmethod
    def _describe(token: Token) -> str:
        return 'end of input' if token.kind == 'end' else f"'{token.text}'"

    @staticmethod
    def _integer(token: Token) -> int:
        if '.' in token.text:
            raise ExpressionSyntaxError(
                f"Decimal literal '{token.text}' is not allowed, write it as a fraction", token.position
            )
        return int(token.text)

    def parse(self) -> Node:
        if self.current.kind == 'end':
            raise ExpressionSyntaxError("Empty expression", 0)
        node = self.expr()
        if self.current.kind != 'end':
            raise ExpressionSyntaxError(
                f"Unexpected {self._describe(self.current)}", self.current.position
            )
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at_op('+') or self.at_op('-'):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        negate = False
        if self.at_op('-'):
            self.advance()
            negate = True
        node = self.factor()
        while self.at_op('*'):
            self.advance()
            node = BinOp('*', node, self.factor())
        return Neg(node) if negate else node

    def factor(self) -> Node:
        node = self.base()
        if self.at_op('^'):
            caret = self.advance()
            token = self.current
            if token.kind != 'num' or '.' in token.text:
                raise ExponentError(
                    "Exponent must be a nonnegative integer literal",
                    token.position if token.kind != 'end' else caret.position
                )
            self.advance()
            if self.at_op('/') or self.at_op('^'):
                raise ExponentError(
                    "Exponent must be a nonnegative integer literal", self.current.position
                )
            node = Pow(node, int(token.text))
        return node

    def base(self) -> Node:
        token = self.current
        if token.kind == 'num' or (self.at_op('-') and self.peek().kind == 'num'):
            return self.rational()
        if token.kind == 'ident':
            self.advance()
            if token.text not in self.space.coord_names:
                raise UnknownIdentifierError(token.text, token.position)
            return Coord(token.text, self.space.coord_names.index(token.text))
        if self.at_op('('):
            self.advance()
            node = self.expr()
            self.expect_op(')')
            return node
        raise ExpressionSyntaxError(
            f"Expected a number, coordinate or '(', found {self._describe(token)}",
            token.position
        )

    def rational(self) -> Node:
        sign = 1
        if self.at_op('-'):
            self.advance()
            sign = -1
        numerator = self._integer(self.advance())
        denominator = 1
        if self.at_op('/'):
            slash = self.advance()
            if self.current.kind != 'num':
                raise ExpressionSyntaxError(
                    "Expected an integer denominator after '/'",
                    self.current.position if self.current.kind != 'end' else slash.position
                )
            denom_token = self.advance()
            denominator = self._integer(denom_token)
            if denominator == 0:
                raise ExpressionSyntaxError("Zero denominator", denom_token.position)
        return Number(Fraction(sign * numerator, denominator))


def parse_tree(text: str, space: ChartSpace) -> Node:
    """Parse ``text`` into an expression tree over ``space``."""
    return _Parser(text, space).parse()


def parse_expr(text: str, space: ChartSpace) -> Poly:
    """
    Parse an expression into its canonical polynomial.

    Args:
        text: Expression in the grammar described in the module docstring
        space: Chart whose coordinate names may appear in ``text``

    Returns:
        The canonical Poly denoted by ``text``

    Raises:
        ExpressionSyntaxError: Malformed text (carries the character position)
        UnknownIdentifierError: A name that is not a coordinate of ``space``
        ExponentError: Exponent that is not a nonnegative integer literal

    Example:
        >>> M = ChartSpace(('x1', 'x2'))
        >>> str(parse_expr("x1*(x2 + 3/2)^2", M))
        'x1*x2^2 + 3*x1*x2 + 9/4*x1'
    """
    return parse_tree(text, space).to_poly(space)
