"""Polynomial expressions to MPoly via precedence climbing.

Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom (('^' | '**') unary)?
    atom   := NUMBER | NAME | '(' expr ')'

``-x^2`` is ``-(x^2)`` and ``^`` is right-associative.  Numbers are exact:
``0.1`` is 1/10 and ``1e-3`` is 1/1000.  Divisors and exponents must be free
of variables.  With ``field=True`` the name ``w`` stands for the
infinitesimal and may also appear in divisors.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .arith import FElem
from .errors import DivisionByZero, NonPolynomial, ParseError, UnknownVariable
from .mpoly import MPoly

W = "w"
MAX_EXPONENT = 10_000


# -- syntax tree -------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int = 0


@dataclass(frozen=True)
class Var:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int = 0


@dataclass(frozen=True)
class Add:
    left: object
    right: object
    pos: int = 0


@dataclass(frozen=True)
class Sub:
    left: object
    right: object
    pos: int = 0


@dataclass(frozen=True)
class Mul:
    left: object
    right: object
    pos: int = 0


@dataclass(frozen=True)
class Div:
    left: object
    right: object
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int = 0


ExprAST = Num | Var | Neg | Add | Sub | Mul | Div | Pow


def variables(node, field=False):
    """Variable names in first-appearance order (``w`` excluded in field mode)."""
    out = []

    def walk(n):
        if isinstance(n, Var):
            if not (field and n.name == W) and n.name not in out:
                out.append(n.name)
        elif isinstance(n, Neg):
            walk(n.operand)
        elif isinstance(n, Pow):
            walk(n.base)
        elif isinstance(n, (Add, Sub, Mul, Div)):
            walk(n.left)
            walk(n.right)

    walk(node)
    return out


# -- tokens --------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\*\*|[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tok = m.group()
            tokens.append(Token(m.lastgroup, "^" if tok == "**" else tok, pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# -- parser ----------------------------------------------------------------------------

class _Parser:
    def __init__(self, text, field):
        self.text = text
        self.field = field
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.tok
        if t.text != text:
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {text!r}, found {found}", t.pos)
        return self.take()

    def parse(self):
        if self.tok.kind == "end":
            raise ParseError("empty expression", 0)
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = (Add if op.text == "+" else Sub)(node, rhs, op.pos)
        return node

    def term(self):
        node = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                node = Mul(node, rhs, op.pos)
            else:
                if variables(rhs, self.field):
                    raise NonPolynomial("division by an expression containing variables", op.pos)
                node = Div(node, rhs, op.pos)
        return node

    def unary(self):
        if self.tok.text in ("-", "+"):
            op = self.take()
            operand = self.unary()
            return Neg(operand, op.pos) if op.text == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text != "^":
            return base
        op = self.take()
        exp_node = self.unary()
        return Pow(base, self._exponent(exp_node, op.pos), op.pos)

    def _exponent(self, node, pos):
        if variables(node, False):
            raise NonPolynomial("exponents must be constant", pos)
        value = _constant(node, pos)
        if value.denominator != 1 or value < 0:
            raise NonPolynomial(f"exponent {value} is not a non-negative integer", pos)
        if value > MAX_EXPONENT:
            raise ParseError(f"exponent {value} exceeds {MAX_EXPONENT}", pos)
        return int(value)

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(Fraction(t.text), t.pos)
        if t.kind == "name":
            self.take()
            return Var(t.text, t.pos)
        if t.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"expected a number, variable or '(', found {found}", t.pos)


def _constant(node, pos):
    """Rational value of a variable-free tree."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        return -_constant(node.operand, pos)
    if isinstance(node, Pow):
        return _constant(node.base, pos) ** node.exponent
    if isinstance(node, (Add, Sub, Mul, Div)):
        a, b = _constant(node.left, pos), _constant(node.right, pos)
        if isinstance(node, Add):
            return a + b
        if isinstance(node, Sub):
            return a - b
        if isinstance(node, Mul):
            return a * b
        if b == 0:
            raise DivisionByZero(f"division by zero at position {node.pos}")
        return a / b
    raise ParseError("constant expected", pos)


def parse_expr(text, field=False):
    """Syntax tree of ``text``."""
    return _Parser(text, field).parse()


def to_mpoly(node, vars, field=False):
    """Evaluate a tree into an MPoly over the registry ``vars``."""
    vars = tuple(vars)

    def ev(n):
        if isinstance(n, Num):
            return MPoly.const(n.value, vars)
        if isinstance(n, Var):
            if field and n.name == W:
                return MPoly.const(FElem.w(), vars)
            if n.name not in vars:
                raise UnknownVariable(f"{n.name} is not among the declared variables {','.join(vars)}")
            return MPoly.var(n.name, vars)
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Add):
            return ev(n.left) + ev(n.right)
        if isinstance(n, Sub):
            return ev(n.left) - ev(n.right)
        if isinstance(n, Mul):
            return ev(n.left) * ev(n.right)
        if isinstance(n, Pow):
            return ev(n.base) ** n.exponent
        if isinstance(n, Div):
            d = ev(n.right)
            if d.is_zero():
                raise DivisionByZero(f"division by zero at position {n.pos}")
            return ev(n.left) / d.constant_value()
        raise TypeError(f"unknown node {n!r}")

    return ev(node)


def parse_poly(text, vars=None, field=False):
    """Parse ``text`` into an MPoly.

    Without ``vars`` the registry is the variables in order of first
    appearance.  A declared list pins the order and may contain variables
    the expression does not use.
    """
    node = parse_expr(text, field)
    found = variables(node, field)
    if vars is None:
        vars = found
    else:
        vars = tuple(vars)
        if field and W in vars:
            raise ParseError(f"{W!r} is reserved for the infinitesimal")
        missing = [v for v in found if v not in vars]
        if missing:
            raise UnknownVariable(f"undeclared variable(s): {', '.join(missing)}")
    return to_mpoly(node, vars, field)


def parse_vars(text):
    names = [v.strip() for v in text.split(",") if v.strip()]
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
            raise ParseError(f"invalid variable name {v!r}")
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable in declaration")
    return tuple(names)
