"""Parser for bracket expressions such as ``3/2*[e(-1),f(0;2,1)] - h1``.

Grammar (whitespace-insensitive)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := [number '*'] atom | '0'
    atom   := 'h1' | 'h2' | 'e(-1)' | 'f(-1)' | ('e' | 'f') '(' int ';' int ',' int ')'
            | '[' expr ',' expr ']' | '(' expr ')'
    number := int ['/' int]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, MonsterAlgebra, ZERO


class ParseError(ValueError):
    def __init__(self, message: str, text: str, start: int, end: int | None = None):
        self.text = text
        self.start = start
        self.end = start + 1 if end is None else end
        super().__init__(f"{message} at position {start}")
        self.message = message

    def annotated(self) -> str:
        caret = " " * self.start + "^" * max(1, self.end - self.start)
        return f"error: {self.message} (position {self.start})\n  {self.text}\n  {caret}"


@dataclass(frozen=True)
class Symbol:
    name: str  # "h1", "h2", "e", "f"
    index: tuple | None  # None for h1/h2; (-1,) for e(-1)/f(-1); (l, j, k) otherwise
    span: tuple[int, int]


@dataclass(frozen=True)
class BracketNode:
    left: object
    right: object
    span: tuple[int, int]


@dataclass(frozen=True)
class Scaled:
    coefficient: Fraction
    node: object
    span: tuple[int, int]


@dataclass(frozen=True)
class Sum:
    terms: tuple
    span: tuple[int, int]


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>h1|h2|e|f)|(?P<op>[\[\](),;+\-*/]))")


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            p = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unknown symbol {text[p]!r}", text, p)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind), m.end(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, value=None):
        if self.i >= len(self.toks):
            return None
        t = self.toks[self.i]
        if value is not None and t[1] != value:
            return None
        return t

    def take(self, value=None, what=None):
        t = self.peek()
        if t is None:
            raise ParseError(f"unexpected end of input, expected {what or value!r}", self.text, len(self.text))
        if value is not None and t[1] != value:
            raise ParseError(f"expected {what or value!r}, found {t[1]!r}", self.text, t[2], t[3])
        self.i += 1
        return t

    def int_(self):
        neg = self.peek("-")
        if neg:
            self.take("-")
        t = self.take(what="integer")
        if t[0] != "num":
            raise ParseError(f"expected integer, found {t[1]!r}", self.text, t[2], t[3])
        return -int(t[1]) if neg else int(t[1]), (neg or t)[2], t[3]

    def expr(self):
        start = self.peek()[2] if self.peek() else len(self.text)
        terms = []
        sign = 1
        if self.peek("-"):
            self.take("-")
            sign = -1
        while True:
            node = self.term()
            if sign < 0:
                node = Scaled(Fraction(-1), node, node.span)
            terms.append(node)
            if self.peek("+"):
                self.take("+")
                sign = 1
            elif self.peek("-"):
                self.take("-")
                sign = -1
            else:
                break
        end = terms[-1].span[1]
        return terms[0] if len(terms) == 1 else Sum(tuple(terms), (start, end))

    def term(self):
        t = self.peek()
        if t and t[0] == "num":
            start = t[2]
            num, _, _ = self.int_()
            den = 1
            if self.peek("/"):
                self.take("/")
                den, s, e = self.int_()
                if den == 0:
                    raise ParseError("zero denominator", self.text, s, e)
            if not self.peek("*"):
                if num == 0:
                    return Sum((), (start, self.toks[self.i - 1][3]))  # the zero element
                end = self.toks[self.i - 1][3]
                raise ParseError("a nonzero scalar must multiply an element ('c*elem')", self.text, start, end)
            self.take("*")
            node = self.atom()
            return Scaled(Fraction(num, den), node, (start, node.span[1]))
        return self.atom()

    def atom(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        kind, val, s, e = t
        if val in ("h1", "h2"):
            self.take()
            return Symbol(val, None, (s, e))
        if val in ("e", "f"):
            self.take()
            self.take("(")
            a, a0, a1 = self.int_()
            if self.peek(")"):
                end = self.take(")")[3]
                if a != -1:
                    raise ParseError(f"{val}({a}) is not a generator; use {val}(-1) or {val}(l;j,k)",
                                     self.text, a0, a1)
                return Symbol(val, (-1,), (s, end))
            self.take(";")
            j, j0, j1 = self.int_()
            self.take(",")
            k, k0, k1 = self.int_()
            end = self.take(")")[3]
            if j < 1:
                raise ParseError(f"block index j={j} must be positive", self.text, j0, j1)
            if not 0 <= a <= j - 1:
                raise ParseError(f"index violation: l={a} must satisfy 0 <= l <= j-1 = {j - 1}",
                                 self.text, a0, a1)
            if k < 1:
                raise ParseError(f"k={k} must be positive", self.text, k0, k1)
            return Symbol(val, (a, j, k), (s, end))
        if val == "[":
            self.take("[")
            left = self.expr()
            self.take(",", what="','")
            right = self.expr()
            end = self.take("]", what="']' (unbalanced brackets)")[3]
            return BracketNode(left, right, (s, end))
        if val == "(":
            self.take("(")
            inner = self.expr()
            self.take(")", what="')'")
            return inner
        raise ParseError(f"unexpected {val!r}", self.text, s, e)


def parse_bracket_expression(text: str):
    """Parse ``text`` into a syntax tree; raises :class:`ParseError` with a source span."""
    p = _Parser(text)
    if not p.toks:
        raise ParseError("empty expression", text, 0)
    tree = p.expr()
    if p.i != len(p.toks):
        kind, val, s, e = p.toks[p.i]
        raise ParseError(f"unexpected {val!r} after expression" + (" (unbalanced brackets)" if val in "])" else ""),
                         text, s, e)
    return tree


def evaluate(tree, alg: MonsterAlgebra) -> AlgebraElement:
    if isinstance(tree, Symbol):
        if tree.name == "h1":
            return alg.h1
        if tree.name == "h2":
            return alg.h2
        if tree.index == (-1,):
            return alg.e_m1 if tree.name == "e" else alg.f_m1
        l, j, k = tree.index
        return alg.e(l, j, k) if tree.name == "e" else alg.f(l, j, k)
    if isinstance(tree, BracketNode):
        return alg.bracket(evaluate(tree.left, alg), evaluate(tree.right, alg))
    if isinstance(tree, Scaled):
        return evaluate(tree.node, alg) * tree.coefficient
    if isinstance(tree, Sum):
        out = ZERO
        for t in tree.terms:
            out = out + evaluate(t, alg)
        return out
    raise TypeError(f"not a syntax tree node: {tree!r}")


def evaluate_text(text: str, alg: MonsterAlgebra) -> AlgebraElement:
    """Parse and evaluate.

    The canonical form of an element names u+/u- basis vectors by their
    standard bracketings, which re-evaluate to the same basis vectors.
    """
    return evaluate(parse_bracket_expression(text), alg)
