"""Sparse polynomials over a finite field and a small expression parser.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Names are ring variables; over an extension field the name ``w`` denotes
the field generator.  Errors carry line and column.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .fields import GF

__all__ = ["Poly", "parse_poly", "parse_ideal"]


class Poly:
    """Polynomial as a dict ``{exponent tuple: nonzero coefficient}``."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: GF, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            c = int(c)
            if c:
                self.terms[tuple(e)] = c

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, field, nvars, exps, c=1):
        return cls(field, nvars, {tuple(exps): c})

    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = int(F.add(out.get(e, 0), c))
        return Poly(F, self.nvars, out)

    def __neg__(self):
        return Poly(self.field, self.nvars, {e: int(self.field.neg(c)) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = int(F.add(out.get(e, 0), F.mul(c1, c2)))
        return Poly(F, self.nvars, out)

    def __pow__(self, n: int):
        result = Poly.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius_power(self, q: int) -> "Poly":
        """``f^q`` for q a power of the characteristic (coefficients raised, exponents scaled)."""
        F = self.field
        return Poly(F, self.nvars, {tuple(a * q for a in e): F.power(c, q) for e, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def format(self, names) -> str:
        F = self.field
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = F.format(c)
            if F.d > 1 and ("+" in cs):
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Poly({self.terms})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str, line: int):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1):
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", line, m.start(3) + 1, text)
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, variables, field, line):
        self.text, self.vars, self.F, self.line = text, list(variables), field, line
        self.toks = _tokenize(text, line)
        self.i = 0

    def error(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        raise ParseError(msg, self.line, tok[2] + 1, self.text)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            self.error(f"expected {kind!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.error("exponent must be a non-negative integer", tok)
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.peek()
        n = len(self.vars)
        if tok[0] == "int":
            self.take()
            return Poly.constant(self.F, n, self.F.from_int(int(tok[1])))
        if tok[0] == "name":
            self.take()
            if tok[1] in self.vars:
                e = [0] * n
                e[self.vars.index(tok[1])] = 1
                return Poly.monomial(self.F, n, e)
            if tok[1] == "w" and self.F.d > 1:
                return Poly.constant(self.F, n, self.F.gen)
            self.error(f"unknown name {tok[1]!r}", tok)
        if tok[0] == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        self.error(f"unexpected {tok[1] or 'end of input'!r}", tok)


def parse_poly(text: str, variables, field: GF, line: int = 1) -> Poly:
    """Parse a polynomial expression such as ``"t^4 + 2*t^5"``."""
    return _Parser(text, variables, field, line).parse()


def _split_top(text: str):
    """Split on commas at parenthesis depth zero, keeping offsets."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


def parse_ideal(text: str, variables, field: GF, line: int = 1) -> list[Poly]:
    """Parse ``"(g1, g2, ...)"`` (parentheses optional) into generator polynomials."""
    s = text.strip()
    offset = text.index(s) if s else 0
    if s.startswith("(") and s.endswith(")"):
        depth = 0
        wraps = True
        for i, ch in enumerate(s):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(s) - 1:
                wraps = False
                break
        if wraps:
            s, offset = s[1:-1], offset + 1
    if not s.strip():
        raise ParseError("empty generator list", line, offset + 1, text)
    gens = []
    for piece, start in _split_top(s):
        if not piece.strip():
            raise ParseError("empty generator", line, offset + start + 1, text)
        try:
            gens.append(parse_poly(piece, variables, field, line))
        except ParseError as err:
            raise ParseError(str(err).split(": ", 1)[1], line, offset + start + err.column, text) from None
    return gens
