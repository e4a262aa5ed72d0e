"""Expression language for quaternion-valued functions of a quaternion ``q``.

Grammar (whitespace insignificant, multiplication always explicit)::

    toplevel := expr ("where" IDENT "=" expr ("," IDENT "=" expr)*)?
    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := "-" factor | base ("^" NAT)?
    base     := "q" | "q0" | "q1" | "q2" | "q3" | "conj" "(" expr ")"
              | NUMBER | "i" | "j" | "k" | IDENT | "(" expr ")"

``where`` bindings are substituted at parse time. NUMBER is an integer,
``n/d`` or a decimal; in exact mode decimals are read as exact rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import EvalError, ExponentOverflowError, LexError, ModeMismatchError, ParseError
from .quaternion import Quaternion
from .scalar import Mode, parse_scalar

MAX_EXPONENT = 64
MAX_DEPTH = 200

Span = tuple[int, int]


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


class Expr:
    """Base class of AST nodes. Nodes are immutable; spans do not affect equality."""

    span: Span


@dataclass(frozen=True)
class Const(Expr):
    value: Quaternion
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class VarQ(Expr):
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Component(Expr):
    index: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Conj(Expr):
    child: Expr
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Neg(Expr):
    child: Expr
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Sum(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Prod(Expr):
    """Ordered product; factor order is significant."""

    factors: tuple[Expr, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Pow(Expr):
    child: Expr
    n: int
    span: Span = field(default=(0, 0), compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("exponent must be non-negative")


@dataclass(frozen=True)
class Series(Expr):
    """Truncated power series ``sum_{n=0}^{N} a_n q^n``, coefficients on the left."""

    coeffs: tuple[Quaternion, ...]
    N: int
    span: Span = field(default=(0, 0), compare=False, repr=False)

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("truncation order must be non-negative")
        if self.N >= len(self.coeffs):
            raise ValueError(f"need {self.N + 1} coefficients, got {len(self.coeffs)}")


@dataclass(frozen=True)
class Sym(Expr):
    """Free real parameter; only produced when ``parse(..., symbols=...)`` allows it."""

    name: str
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class _Ident(Expr):
    name: str
    span: Span = field(default=(0, 0), compare=False, repr=False)


def const(value, mode: Mode = Mode.EXACT) -> Const:
    if isinstance(value, Quaternion):
        return Const(value)
    return Const(Quaternion.real(value, mode))


def series(coeffs: Iterable[Quaternion], N: int | None = None) -> Series:
    coeffs = tuple(coeffs)
    return Series(coeffs, len(coeffs) - 1 if N is None else N)


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+/\d+|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^(),=])
    """,
    re.VERBOSE,
)

KEYWORDS = {"q", "q0", "q1", "q2", "q3", "conj", "i", "j", "k", "where"}


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "name", "op", "eof"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "number" and "/" in tok and int(tok.split("/")[1]) == 0:
                raise LexError("zero denominator", pos, text)
            tokens.append(Token(kind, tok, pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, mode: Mode, symbols: frozenset[str]):
        self.text = text
        self.mode = mode
        self.symbols = symbols
        self.tokens = tokenize(text)
        self.i = 0
        self.depth = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.pos, self.text)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            raise self.error(f"expected {text!r}, found {_describe(tok)}")
        return self.advance()

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind in ("op", "name") and tok.text == text

    def toplevel(self) -> Expr:
        body = self.expr()
        bindings: list[tuple[str, Expr, Token]] = []
        if self.at("where"):
            self.advance()
            while True:
                tok = self.advance()
                if tok.kind != "name" or tok.text in KEYWORDS:
                    raise self.error(f"expected identifier, found {_describe(tok)}", tok)
                self.expect("=")
                bindings.append((tok.text, self.expr(), tok))
                if not self.at(","):
                    break
                self.advance()
        if self.peek().kind != "eof":
            raise self.error(f"unexpected {_describe(self.peek())}")
        env: dict[str, Expr] = {}
        for name, value, tok in bindings:
            if name in env:
                raise self.error(f"identifier {name!r} bound twice", tok)
            env[name] = self.resolve(value, env)
        return self.resolve(body, env)

    def resolve(self, e: Expr, env: dict[str, Expr]) -> Expr:
        def sub(node: Expr) -> Expr:
            if isinstance(node, _Ident):
                if node.name in env:
                    return env[node.name]
                if node.name in self.symbols:
                    return Sym(node.name, node.span)
                raise ParseError(f"unbound identifier {node.name!r}", node.span[0], self.text)
            return None

        return transform(e, sub)

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")

    def expr(self) -> Expr:
        self.enter()
        start = self.peek().pos
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            right = self.term()
            if op.text == "-":
                right = Neg(right, (op.pos, self.peek().pos))
            left = Sum(left, right, (start, self.peek().pos))
        self.depth -= 1
        return left

    def term(self) -> Expr:
        start = self.peek().pos
        factors = [self.factor()]
        while self.at("*"):
            self.advance()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Prod(tuple(factors), (start, self.peek().pos))

    def factor(self) -> Expr:
        self.enter()
        start = self.peek().pos
        if self.at("-"):
            self.advance()
            out: Expr = Neg(self.factor(), (start, self.peek().pos))
        else:
            out = self.base()
            if self.at("^"):
                self.advance()
                tok = self.advance()
                if tok.kind != "number" or not tok.text.isdigit():
                    raise self.error(f"exponent must be a natural number, found {_describe(tok)}", tok)
                n = int(tok.text)
                if n > MAX_EXPONENT:
                    raise ExponentOverflowError(
                        f"exponent {n} exceeds the cap of {MAX_EXPONENT}", tok.pos, self.text
                    )
                out = Pow(out, n, (start, self.peek().pos))
        self.depth -= 1
        return out

    def base(self) -> Expr:
        tok = self.advance()
        span = (tok.pos, tok.pos + len(tok.text))
        if tok.kind == "number":
            return Const(Quaternion.real(parse_scalar(tok.text, self.mode), self.mode), span)
        if tok.kind == "name":
            name = tok.text
            if name == "q":
                return VarQ(span)
            if name in ("q0", "q1", "q2", "q3"):
                return Component(int(name[1]), span)
            if name in ("i", "j", "k"):
                return Const(Quaternion.unit("1ijk".index(name), self.mode), span)
            if name == "conj":
                self.expect("(")
                inner = self.expr()
                close = self.expect(")")
                return Conj(inner, (tok.pos, close.pos + 1))
            if name == "where":
                raise self.error("expected operand, found 'where'", tok)
            return _Ident(name, span)
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error(f"expected operand, found {_describe(tok)}", tok)


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


def parse(text: str, mode: Mode = Mode.EXACT, symbols: Iterable[str] = ()) -> Expr:
    """Parse ``text`` into an AST; raises a positioned :class:`ExprError`."""
    return _Parser(text, mode, frozenset(symbols)).toplevel()


# ---------------------------------------------------------------------------
# Traversal helpers
# ---------------------------------------------------------------------------


def transform(e: Expr, fn: Callable[[Expr], Expr | None]) -> Expr:
    """Bottom-up rebuild; ``fn`` returns a replacement node or None to recurse."""
    out = fn(e)
    if out is not None:
        return out
    if isinstance(e, Conj):
        return Conj(transform(e.child, fn), e.span)
    if isinstance(e, Neg):
        return Neg(transform(e.child, fn), e.span)
    if isinstance(e, Sum):
        return Sum(transform(e.left, fn), transform(e.right, fn), e.span)
    if isinstance(e, Prod):
        return Prod(tuple(transform(f, fn) for f in e.factors), e.span)
    if isinstance(e, Pow):
        return Pow(transform(e.child, fn), e.n, e.span)
    return e


def with_mode(e: Expr, mode: Mode) -> Expr:
    """Copy of ``e`` with every constant explicitly converted to ``mode``."""

    def conv(node: Expr) -> Expr | None:
        if isinstance(node, Const):
            return Const(node.value.to_mode(mode), node.span)
        if isinstance(node, Series):
            return Series(tuple(c.to_mode(mode) for c in node.coeffs), node.N, node.span)
        return None

    return transform(e, conv)


def is_constant(e: Expr) -> bool:
    """True if ``e`` does not mention ``q`` or its components."""
    if isinstance(e, (VarQ, Component, Series)):
        return False
    if isinstance(e, (Conj, Neg, Pow)):
        return is_constant(e.child)
    if isinstance(e, Sum):
        return is_constant(e.left) and is_constant(e.right)
    if isinstance(e, Prod):
        return all(is_constant(f) for f in e.factors)
    return True


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(e: Expr, q: Quaternion) -> Quaternion:
    """Evaluate ``e`` at the point ``q`` by walking the tree."""
    if isinstance(e, Const):
        if e.value.mode is not q.mode:
            raise ModeMismatchError(
                f"{e.value.mode.value} constant evaluated at a {q.mode.value} point"
            )
        return e.value
    if isinstance(e, VarQ):
        return q
    if isinstance(e, Component):
        return Quaternion.real(q.components[e.index], q.mode)
    if isinstance(e, Conj):
        return evaluate(e.child, q).conjugate()
    if isinstance(e, Neg):
        return -evaluate(e.child, q)
    if isinstance(e, Sum):
        return evaluate(e.left, q) + evaluate(e.right, q)
    if isinstance(e, Prod):
        acc = evaluate(e.factors[0], q)
        for f in e.factors[1:]:
            acc = acc * evaluate(f, q)
        return acc
    if isinstance(e, Pow):
        return evaluate(e.child, q) ** e.n
    if isinstance(e, Series):
        acc = Quaternion.zero(q.mode)
        for a in reversed(e.coeffs[: e.N + 1]):
            if a.mode is not q.mode:
                raise ModeMismatchError("series coefficient mode differs from the point")
            acc = acc * q + a
        return acc
    if isinstance(e, Sym):
        raise EvalError(f"free symbol {e.name!r} has no quaternion value", e.span[0])
    raise TypeError(f"not an expression node: {e!r}")


def as_function(e: Expr, mode: Mode = Mode.FLOAT) -> Callable[[Quaternion], Quaternion]:
    """Closure ``q -> evaluate(e, q)`` with constants converted to ``mode``."""
    converted = with_mode(e, mode)
    return lambda q: evaluate(converted, q)


def render(e: Expr) -> str:
    """Fully parenthesised text that re-parses to an equivalent expression."""
    if isinstance(e, Const):
        return f"({e.value})"
    if isinstance(e, VarQ):
        return "q"
    if isinstance(e, Component):
        return f"q{e.index}"
    if isinstance(e, Conj):
        return f"conj({render(e.child)})"
    if isinstance(e, Neg):
        return f"(-{render(e.child)})"
    if isinstance(e, Sum):
        return f"({render(e.left)}+{render(e.right)})"
    if isinstance(e, Prod):
        return "(" + "*".join(render(f) for f in e.factors) + ")"
    if isinstance(e, Pow):
        return f"{render(e.child)}^{e.n}"
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Series):
        return "series(" + ", ".join(str(c) for c in e.coeffs[: e.N + 1]) + ")"
    raise TypeError(f"not an expression node: {e!r}")


def point(values: Sequence, mode: Mode = Mode.EXACT) -> Quaternion:
    """Build a quaternion from four strings/numbers in ``mode``."""
    if len(values) != 4:
        raise ValueError("a point needs exactly four components w,x,y,z")
    vals = [parse_scalar(v, mode) if isinstance(v, str) else v for v in values]
    return Quaternion(*vals, mode=mode)
