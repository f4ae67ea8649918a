"""Expression strings in one variable ``w``.

Grammar (EBNF), standard precedence, ``^`` right-associative and binding
tighter than unary minus (``-w^2 == -(w^2)``)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = ("-" | "+") unary | power ;
    power   = primary [ "^" unary ] ;          (* exponent must be constant *)
    primary = number | "w" | name "(" expr { "," expr } ")" | "(" expr ")" ;
    name    = "sqrt" | "log" | "exp" | "pow" | "sinh" | "asinh" ;
    number  = digits [ "." digits ] [ exponent ] | "." digits [ exponent ] ;

``pow(x, c)`` is the same as ``x ^ c`` and also requires a constant ``c``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import jet as J
from .errors import NonConstantExponentError, ParseError, UnknownIdentifierError


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Node = Union[Const, Var, Neg, BinOp, Call]

FUNCTIONS = {"sqrt": 1, "log": 1, "exp": 1, "pow": 2, "sinh": 1, "asinh": 1}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + (len(rest) - len(rest.lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, off = self.take()
        if val != value or kind == "end":
            what = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {what}", off)

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary())
        if kind == "op" and val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        kind, val, off = self.peek()
        if kind == "op" and val == "^":
            self.take()
            exp_off = self.peek()[2]
            exponent = self.unary()
            if not is_constant(exponent):
                raise NonConstantExponentError("exponent of '^' must be constant", exp_off)
            return BinOp("^", base, exponent)
        return base

    def primary(self):
        kind, val, off = self.take()
        if kind == "num":
            return Const(float(val))
        if kind == "name":
            if val == "w":
                return Var()
            if val not in FUNCTIONS:
                raise UnknownIdentifierError(f"unknown identifier {val!r}", off)
            self.expect("(")
            args = [self.expr()]
            while self.peek()[1] == "," and self.peek()[0] == "op":
                self.take()
                args.append(self.expr())
            self.expect(")")
            if len(args) != FUNCTIONS[val]:
                raise ParseError(f"{val} takes {FUNCTIONS[val]} argument(s), got {len(args)}", off)
            if val == "pow" and not is_constant(args[1]):
                raise NonConstantExponentError("exponent of pow must be constant", off)
            return Call(val, tuple(args))
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", off)


def parse(text: str) -> Node:
    """Parse an expression string into an AST.

    Raises :class:`ParseError` (with ``offset``) on malformed input, and its
    subclasses for unknown identifiers or non-constant exponents.
    """
    p = _Parser(text)
    node = p.expr()
    kind, val, off = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", off)
    return node


def is_constant(node: Node) -> bool:
    if isinstance(node, Const):
        return True
    if isinstance(node, Var):
        return False
    if isinstance(node, Neg):
        return is_constant(node.operand)
    if isinstance(node, BinOp):
        return is_constant(node.left) and is_constant(node.right)
    return all(is_constant(a) for a in node.args)


def evaluate(node: Node, x: J.Jet3) -> J.Jet3:
    """Evaluate ``node`` on the jet ``x`` of the variable ``w``."""
    if isinstance(node, Const):
        return J.Jet3.constant(node.value, like=x.v0)
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -evaluate(node.operand, x)
    if isinstance(node, BinOp):
        if node.op == "^":
            return J.power(evaluate(node.left, x), _constant_value(node.right))
        a, b = evaluate(node.left, x), evaluate(node.right, x)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a / b
    args = node.args
    if node.name == "pow":
        return J.power(evaluate(args[0], x), _constant_value(args[1]))
    return getattr(J, node.name)(evaluate(args[0], x))


def _constant_value(node):
    with np.errstate(all="ignore"):
        return float(evaluate(node, J.Jet3.constant(0.0)).v0)


def to_string(node: Node) -> str:
    """Fully parenthesised rendering; ``parse(to_string(n)) == n``."""
    if isinstance(node, Const):
        return repr(node.value)
    if isinstance(node, Var):
        return "w"
    if isinstance(node, Neg):
        return f"(-{to_string(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_string(node.left)}{node.op}{to_string(node.right)})"
    return f"{node.name}({','.join(to_string(a) for a in node.args)})"
