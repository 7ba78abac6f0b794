"""Expressions in one variable ``x`` for the command line.

Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | 'x' | CONST | FUNC '(' expr ')' | '(' expr ')'

``-x^2`` parses as ``-(x^2)`` and ``2^-1`` is allowed. Constants are ``pi``,
``e`` and ``c``; ``c`` takes its value from the bindings (default 1).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Union

from .core import Interval, PqError, RealFunction

FUNCTIONS = {
    "ln": math.log,
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
    "sqrt": math.sqrt,
}
CONSTANTS = ("pi", "e", "c")


class ExprSyntaxError(PqError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ExprEvalError(PqError, ArithmeticError):
    def __init__(self, message: str, subtree: "Expr"):
        super().__init__(f"{message} in '{to_source(subtree)}'")
        self.subtree = subtree


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or a name in FUNCTIONS
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Var, Const, Unary, Binary]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


@dataclass
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(source: str) -> List[_Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(source, pos)
        if m is None or m.end() == pos:
            rest = source[pos:]
            if rest.strip() == "":
                break
            start = pos + len(rest) - len(rest.lstrip())
            raise ExprSyntaxError(f"unexpected character {source[start]!r}", _byte_offset(source, start))
        kind = m.lastgroup
        tokens.append(_Token(kind, m.group(kind), _byte_offset(source, m.start(kind))))
        pos = m.end()
    tokens.append(_Token("end", "", _byte_offset(source, len(source))))
    return tokens


def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def fail(self, expected: str):
        found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
        raise ExprSyntaxError(f"expected {expected}, found {found}", self.tok.offset)

    def parse(self) -> Expr:
        tree = self.expr()
        if self.tok.kind != "end":
            self.fail("operator or end of input")
        return tree

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            left = Binary(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            left = Binary(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.accept("-"):
            return Unary("neg", self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            return Binary("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(float(tok.text))
        if tok.kind == "name":
            self.i += 1
            if tok.text == "x":
                return Var()
            if tok.text in CONSTANTS:
                return Const(tok.text)
            if tok.text in FUNCTIONS:
                if not self.accept("("):
                    self.fail(f"'(' after {tok.text}")
                arg = self.expr()
                if not self.accept(")"):
                    self.fail("')'")
                return Unary(tok.text, arg)
            raise ExprSyntaxError(f"unknown name {tok.text!r}", tok.offset)
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                self.fail("')'")
            return inner
        self.fail("number, x, constant, function or '('")


def parse_expr(source: str) -> Expr:
    return _Parser(source).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}
_ATOM = 5


def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary) and e.op == "neg":
        return _PREC["neg"]
    return _ATOM


def _wrap(e: Expr, parens: bool) -> str:
    s = to_source(e)
    return f"({s})" if parens else s


def to_source(e: Expr) -> str:
    """Source text that parses back to the same tree."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            return "-" + _wrap(e.operand, _prec(e.operand) < _PREC["neg"])
        return f"{e.op}({to_source(e.operand)})"
    if e.op == "^":
        left = _wrap(e.left, _prec(e.left) <= _PREC["^"])
        right = _wrap(e.right, _prec(e.right) < _PREC["neg"])
        return f"{left}^{right}"
    level = _PREC[e.op]
    left = _wrap(e.left, _prec(e.left) < level)
    right = _wrap(e.right, _prec(e.right) <= level)
    return f"{left} {e.op} {right}"


def eval_expr(e: Expr, x: float, bindings: Optional[Mapping[str, float]] = None) -> float:
    """Evaluate ``e`` at ``x``; faults raise :class:`ExprEvalError` naming the subtree."""
    env = {"pi": math.pi, "e": math.e, "c": 1.0}
    if bindings:
        env.update(bindings)
    return _eval(e, float(x), env)


def _eval(e: Expr, x: float, env: Dict[str, float]) -> float:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Const):
        return env[e.name]
    try:
        if isinstance(e, Unary):
            v = _eval(e.operand, x, env)
            if e.op == "neg":
                return -v
            if e.op == "ln" and v <= 0.0:
                raise ExprEvalError(f"ln of nonpositive value {v!r}", e)
            return FUNCTIONS[e.op](v)
        left, right = _eval(e.left, x, env), _eval(e.right, x, env)
        if e.op == "+":
            result = left + right
        elif e.op == "-":
            result = left - right
        elif e.op == "*":
            result = left * right
        elif e.op == "/":
            if right == 0.0:
                raise ExprEvalError("division by zero", e)
            result = left / right
        else:
            result = math.pow(left, right)
    except ExprEvalError:
        raise
    except (ArithmeticError, ValueError) as exc:
        raise ExprEvalError(str(exc), e) from exc
    if math.isinf(result) and math.isfinite(left) and math.isfinite(right):
        raise ExprEvalError("overflow", e)
    return result


def expr_function(e: Expr, bindings: Optional[Mapping[str, float]] = None, domain: Interval = Interval()) -> RealFunction:
    """Adapter turning an expression into a :class:`RealFunction`."""
    env = {"pi": math.pi, "e": math.e, "c": 1.0}
    if bindings:
        env.update(bindings)
    return RealFunction(lambda x: _eval(e, float(x), env), domain, to_source(e))
