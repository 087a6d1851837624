"""A small grammar for quadratic surds and quotients of their logarithms.

    expr    := term ('/' term)*
    term    := '-' term | primary
    primary := 'log' '(' surd ')' | '(' expr ')' | surd
    surd    := SINT [('+'|'-') [INT '*'] 'sqrt' '(' INT ')']
             | [SINT '*'] 'sqrt' '(' INT ')'
    SINT    := ['-'] INT

A leading minus directly in front of digits belongs to the integer, so
``-2+1*sqrt(3)`` is the surd -2 + sqrt(3), not the negation of 2 + sqrt(3).
Whitespace between tokens is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PrecisionError, UsageError
from .intervals import CertifiedReal
from .linear_forms import AlgebraicSurd


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Surd:
    """a + b*sqrt(r); ``a is None`` for the bare form b*sqrt(r)."""

    a: int | None
    b: int
    r: int


@dataclass(frozen=True)
class Log:
    arg: Num | Surd


@dataclass(frozen=True)
class Neg:
    operand: "SurdExpr"


@dataclass(frozen=True)
class Div:
    left: "SurdExpr"
    right: "SurdExpr"


SurdExpr = Num | Surd | Log | Neg | Div


class SurdSyntaxError(UsageError):
    def __init__(self, text: str, pos: int, expected: set[str]):
        self.text = text
        self.offset = len(text[:pos].encode())
        self.expected = frozenset(expected)
        found = repr(text[pos]) if pos < len(text) else "end of input"
        super().__init__(f"byte {self.offset}: expected {' or '.join(sorted(self.expected))}, found {found}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, *expected: str) -> SurdSyntaxError:
        return SurdSyntaxError(self.text, self.pos, set(expected))

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def peek_word(self, word: str) -> bool:
        self.skip()
        return self.text.startswith(word, self.pos)

    def eat(self, tok: str) -> None:
        if not self.peek_word(tok):
            raise self.error(repr(tok))
        self.pos += len(tok)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("INT")
        return int(self.text[start:self.pos])

    def signed_int(self) -> int:
        neg = False
        if self.peek() == "-":
            self.pos += 1
            neg = True
        n = self.integer()
        return -n if neg else n

    def sqrt_part(self) -> int:
        self.eat("sqrt")
        self.eat("(")
        r = self.integer()
        self.eat(")")
        return r

    def expr(self) -> SurdExpr:
        node = self.term()
        while self.peek() == "/":
            self.pos += 1
            node = Div(node, self.term())
        return node

    def term(self) -> SurdExpr:
        if self.peek() == "-":
            save = self.pos
            self.pos += 1
            if self.peek().isdigit():
                self.pos = save
                return self.surd()
            return Neg(self.term())
        return self.primary()

    def primary(self) -> SurdExpr:
        if self.peek_word("log"):
            self.pos += 3
            self.eat("(")
            arg = self.surd()
            self.eat(")")
            return Log(arg)
        if self.peek() == "(":
            self.pos += 1
            node = self.expr()
            self.eat(")")
            return node
        if self.peek().isdigit() or self.peek() == "-" or self.peek_word("sqrt"):
            return self.surd()
        raise self.error("'log'", "'('", "'-'", "'sqrt'", "INT")

    def surd(self) -> Num | Surd:
        if not (self.peek().isdigit() or self.peek() == "-" or self.peek_word("sqrt")):
            raise self.error("'-'", "'sqrt'", "INT")
        if self.peek_word("sqrt"):
            return Surd(None, 1, self.sqrt_part())
        a = self.signed_int()
        nxt = self.peek()
        if nxt == "*":
            self.pos += 1
            return Surd(None, a, self.sqrt_part())
        if nxt in "+-" and nxt:
            save = self.pos
            self.pos += 1
            if self.peek_word("sqrt"):
                b = 1
            elif self.peek().isdigit():
                b = self.integer()
                self.eat("*")
            else:
                self.pos = save + 1
                raise self.error("INT", "'sqrt'")
            r = self.sqrt_part()
            return Surd(a, b if nxt == "+" else -b, r)
        return Num(a)


def parse_surd_expr(text: str) -> SurdExpr:
    p = _Parser(text)
    node = p.expr()
    if p.peek() != "":
        raise p.error("'/'", "end of input")
    return node


def parse_surd(text: str) -> AlgebraicSurd:
    """A single surd (no logarithms or quotients)."""
    p = _Parser(text)
    node = p.surd()
    if p.peek() != "":
        raise p.error("end of input")
    return to_surd(node)


def to_string(node: SurdExpr) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Surd):
        bare = "sqrt" if node.b == 1 else f"{node.b}*sqrt"
        if node.a is None:
            return f"{bare}({node.r})"
        sign = "+" if node.b >= 0 else "-"
        return f"{node.a}{sign}{abs(node.b)}*sqrt({node.r})"
    if isinstance(node, Log):
        return f"log({to_string(node.arg)})"
    if isinstance(node, Neg):
        inner = to_string(node.operand)
        return f"-{inner}" if isinstance(node.operand, (Log, Neg)) else f"-({inner})"
    if isinstance(node, Div):
        right = to_string(node.right)
        if isinstance(node.right, Div):
            right = f"({right})"
        return f"{to_string(node.left)}/{right}"
    raise TypeError(f"not an expression node: {node!r}")


def to_surd(node: Num | Surd) -> AlgebraicSurd:
    if isinstance(node, Num):
        return AlgebraicSurd(Fraction(node.value))
    if isinstance(node, Surd):
        if node.r == 0:
            return AlgebraicSurd(Fraction(node.a or 0))
        return AlgebraicSurd(Fraction(node.a or 0), Fraction(node.b), node.r)
    raise UsageError(f"expected a surd, got {to_string(node)}")


def evaluate(node: SurdExpr) -> CertifiedReal:
    """CertifiedReal for the expression; domain problems raise DomainError."""
    if isinstance(node, (Num, Surd)):
        s = to_surd(node)
        return CertifiedReal(s.value_iv, to_string(node))
    if isinstance(node, Log):
        s = to_surd(node.arg)
        if s.q == 0 and s.p <= 0:
            raise DomainError(f"log of non-positive number {to_string(node.arg)}")
        return s.log_certified()
    if isinstance(node, Neg):
        inner = evaluate(node.operand)
        return CertifiedReal(lambda ctx: -inner.interval(ctx), to_string(node))
    if isinstance(node, Div):
        num, den = evaluate(node.left), evaluate(node.right)
        _nonzero(node.right, den)
        return CertifiedReal(lambda ctx: num.interval(ctx) / den.interval(ctx), to_string(node))
    raise TypeError(f"not an expression node: {node!r}")


def _nonzero(node: SurdExpr, value: CertifiedReal) -> None:
    if isinstance(node, (Num, Surd)) and to_surd(node) == AlgebraicSurd(Fraction(0)):
        raise DomainError("division by zero")
    if isinstance(node, Log) and to_surd(node.arg) == AlgebraicSurd(Fraction(1)):
        raise DomainError("division by log(1) = 0")
    for prec in (64, 256, 1024):
        if value.enclose(prec).sign() != 0:
            return
    raise PrecisionError(f"cannot certify that {to_string(node)} is nonzero")


def evaluate_text(text: str) -> CertifiedReal:
    return evaluate(parse_surd_expr(text))
