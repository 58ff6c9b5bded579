"""A small expression language for functions on the grid.

Grammar, lowest precedence first::

    additive        := multiplicative (("+" | "-") multiplicative)*
    multiplicative  := unary (("*" | "/") unary)*
    unary           := "-" unary | power
    power           := atom ("^" unary)?          # right-associative
    atom            := NUMBER | "x" | "(" additive ")"
                     | ("exp" | "log") "(" additive ")"

Binary operators are left-associative; "^" is right-associative and its
exponent must fold to a constant nonnegative integer, which keeps every
compiled function rational-valued.  NUMBER is an integer or a decimal;
decimals convert exactly ("0.37" is the rational 37/100, not a float).
Syntax errors carry the offending position.

Compilation turns a tree into a ``GridFunction`` by folding the grid
function algebra over it, so continuity certificates compose along the
way.  ``exp`` applied to a certified argument gets a certificate from
the bound 3**ceil(B) (an integer dominating e**B); ``log`` never gets
one and is left to sampling.  Division certifies only when the divisor
folds to a constant.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import DomainError, EvaluationError, ParseError
from .functions import constant, exp_fn, identity
from .grid import GridSpec
from .gridfun import Certificate, GridFunction
from .rational import parse_rational
from .series import DEFAULT_POLICY, TruncationPolicy, exp_approx, log_approx


@dataclass(frozen=True)
class Literal:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    child: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"


Node = Union[Literal, Var, Neg, BinOp, Pow, Call]
Expression = Node

_TOKEN = re.compile(
    r"(?P<number>\d+\.\d+|\.\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)
_FUNCTIONS = ("exp", "log")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), pos + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", position=pos)
        return self.take()

    def parse(self) -> Node:
        node = self.additive()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r} after expression", position=pos)
        return node

    def additive(self) -> Node:
        node = self.multiplicative()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                node = BinOp(value, node, self.multiplicative())
            else:
                return node

    def multiplicative(self) -> Node:
        node = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.take()
                node = BinOp(value, node, self.unary())
            else:
                return node

    def unary(self) -> Node:
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, value, pos = self.peek()
        if kind == "op" and value == "^":
            self.take()
            _, _, exp_pos = self.peek()
            exponent = self.unary()
            folded = fold_constant(exponent)
            if folded is None:
                raise ParseError("exponent must be constant", position=exp_pos)
            if folded.denominator != 1 or folded < 0:
                raise ParseError(
                    f"exponent must be a nonnegative integer, got {folded}",
                    position=exp_pos,
                )
            return Pow(base, int(folded))
        return base

    def atom(self) -> Node:
        kind, value, pos = self.take()
        if kind == "number":
            return Literal(parse_rational(value))
        if kind == "name":
            if value == "x":
                return Var()
            if value in _FUNCTIONS:
                self.expect_op("(")
                arg = self.additive()
                self.expect_op(")")
                return Call(value, arg)
            raise ParseError(f"unknown identifier {value!r}", position=pos)
        if kind == "op" and value == "(":
            node = self.additive()
            self.expect_op(")")
            return node
        shown = value if value else "end of input"
        raise ParseError(f"expected a value, got {shown}", position=pos)


def parse(text: str) -> Node:
    """Parse an expression; raises ParseError with a 1-based position."""
    if not text.strip():
        raise ParseError("empty expression", position=1)
    return _Parser(text).parse()


def fold_constant(node: Node) -> Optional[Fraction]:
    """Value of a literal-only subtree, or None if it involves x or a
    function call (calls are excluded: their values depend on tau)."""
    if isinstance(node, Literal):
        return node.value
    if isinstance(node, Neg):
        v = fold_constant(node.child)
        return None if v is None else -v
    if isinstance(node, BinOp):
        a = fold_constant(node.left)
        b = fold_constant(node.right)
        if a is None or b is None:
            return None
        if node.op == "/" and b == 0:
            return None
        return {"+": a + b, "-": a - b, "*": a * b, "/": a / b if b else None}[node.op]
    if isinstance(node, Pow):
        v = fold_constant(node.base)
        return None if v is None else v**node.exponent
    return None


_ADD, _MUL, _UNARY, _POW, _ATOM = 1, 2, 3, 4, 5


def _render(node: Node, parent: int) -> str:
    if isinstance(node, Literal):
        return _render_literal(node.value, parent)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        text = "-" + _render(node.child, _UNARY)
        return f"({text})" if parent > _UNARY else text
    if isinstance(node, BinOp):
        mine = _ADD if node.op in "+-" else _MUL
        glue = f" {node.op} " if mine == _ADD else node.op
        text = _render(node.left, mine) + glue + _render(node.right, mine + 1)
        return f"({text})" if parent > mine else text
    if isinstance(node, Pow):
        text = _render(node.base, _ATOM) + "^" + str(node.exponent)
        # a power base that is itself a power needs parentheses, or the
        # text re-parses with the second exponent folded into the first
        return f"({text})" if parent > _POW else text
    if isinstance(node, Call):
        return f"{node.name}({_render(node.arg, _ADD)})"
    raise TypeError(f"not an expression node: {node!r}")


def _render_literal(q: Fraction, parent: int) -> str:
    if q < 0:
        return _render(Neg(Literal(-q)), parent)
    if q.denominator == 1:
        return str(q.numerator)
    # exact decimal when the denominator is 2^a 5^b, else a quotient
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1:
        digits = max(twos, fives)
        scaled = q.numerator * 10**digits // q.denominator
        text = str(scaled).rjust(digits + 1, "0")
        return f"{text[:-digits]}.{text[-digits:]}"
    text = f"{q.numerator}/{q.denominator}"
    return f"({text})" if parent > _MUL else text


def pretty(node: Node) -> str:
    """Canonical text form; pretty followed by parse reproduces the tree
    for any tree that parse itself can produce."""
    return _render(node, 0)


def _ceil_fraction(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _exp_of(g: GridFunction, spec: GridSpec, policy: TruncationPolicy) -> GridFunction:
    theta = (
        Fraction(0)
        if policy.mode == "full"
        else Fraction(1, spec.tau << policy.guard)
    )

    def rule(p):
        return exp_approx(g(p), spec.tau, policy)

    cert = None
    if g.certificate is not None:
        lip = Fraction(3 ** max(1, _ceil_fraction(g.certificate.bound)))
        inner = g.certificate.modulus
        cert = Certificate(lip, lambda d: lip * inner(d) + 2 * theta)
    return GridFunction(spec, rule, cert, memoize=True)


def _log_of(g: GridFunction, spec: GridSpec, policy: TruncationPolicy) -> GridFunction:
    def rule(p):
        v = g(p)
        if v <= 0:
            raise EvaluationError(f"log of non-positive value {v}", point=p)
        return log_approx(v, spec.tau, policy)

    return GridFunction(spec, rule, memoize=True)


def compile(
    node: Node, spec: GridSpec, policy: TruncationPolicy = DEFAULT_POLICY
) -> GridFunction:
    """Lower a tree onto a grid by folding the grid-function algebra.

    Certificates survive exactly as far as the algebra can carry them:
    polynomials keep both value and quotient certificates, exp(x) keeps
    the library ones, exp of a certified argument keeps a value
    certificate, log and non-constant division keep none.
    """
    if isinstance(node, Literal):
        return constant(spec, node.value)
    if isinstance(node, Var):
        return identity(spec)
    if isinstance(node, Neg):
        return compile(node.child, spec, policy) * Fraction(-1)
    if isinstance(node, Pow):
        base = compile(node.base, spec, policy)
        out = constant(spec, 1)
        for _ in range(node.exponent):
            out = out * base
        return out
    if isinstance(node, Call):
        if node.name == "exp" and isinstance(node.arg, Var):
            return exp_fn(spec, policy)
        arg = compile(node.arg, spec, policy)
        if node.name == "exp":
            return _exp_of(arg, spec, policy)
        return _log_of(arg, spec, policy)
    if isinstance(node, BinOp):
        left = compile(node.left, spec, policy)
        if node.op == "/":
            divisor = fold_constant(node.right)
            if divisor is not None:
                if divisor == 0:
                    raise DomainError("division by constant zero")
                return left * (1 / divisor)
            right = compile(node.right, spec, policy)

            def rule(p):
                d = right(p)
                if d == 0:
                    raise EvaluationError("division by zero", point=p)
                return left(p) / d

            return GridFunction(spec, rule)
        right = compile(node.right, spec, policy)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"not an expression node: {node!r}")
