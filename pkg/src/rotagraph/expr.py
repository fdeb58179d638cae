"""Text grammar for exact values, used by the CLI and serialisation.

    expr   := rational | expr (+|-|*|/) expr | sqrt(expr)
            | root(poly, index) | (expr)
    poly   := comma-separated ascending integer coefficients
    index  := 0-based position in the ascending list of real roots

Rationals are written p/q or as plain integers.  Every AlgReal serialises
back into this grammar (rationals as p/q, irrationals as root(...)), so
values round-trip exactly.
"""

import re
from fractions import Fraction

from . import algebraic, polys
from .algebraic import AlgReal
from .errors import ParseError

_TOKEN = re.compile(r"\s*(sqrt|root|\d+|[()+\-*/,])")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character at {pos!r}: {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression")
        self.i += 1
        return t

    def expect(self, tok):
        t = self.next()
        if t != tok:
            raise ParseError(f"expected {tok!r}, got {t!r}")

    def parse_expr(self):
        v = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.parse_term()
            v = algebraic.add(v, rhs) if op == "+" else algebraic.sub(v, rhs)
        return v

    def parse_term(self):
        v = self.parse_factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.parse_factor()
            v = algebraic.mul(v, rhs) if op == "*" else algebraic.div(v, rhs)
        return v

    def parse_factor(self):
        t = self.peek()
        if t == "-":
            self.next()
            return algebraic.neg(self.parse_factor())
        if t == "(":
            self.next()
            v = self.parse_expr()
            self.expect(")")
            return v
        if t == "sqrt":
            self.next()
            self.expect("(")
            v = self.parse_expr()
            self.expect(")")
            return algebraic.sqrt_nonneg(v)
        if t == "root":
            self.next()
            self.expect("(")
            coeffs = [self.parse_int()]
            while self.peek() == ",":
                self.next()
                coeffs.append(self.parse_int())
            self.expect(")")
            if len(coeffs) < 2:
                raise ParseError("root() needs coefficients and an index")
            index = coeffs.pop()
            return AlgReal.from_root(polys.IntPoly(coeffs), index)
        if t is not None and t.isdigit():
            return AlgReal(Fraction(self.parse_int()))
        raise ParseError(f"unexpected token {t!r}")

    def parse_int(self):
        sign = 1
        while self.peek() == "-":
            self.next()
            sign = -sign
        t = self.next()
        if not t.isdigit():
            raise ParseError(f"expected integer, got {t!r}")
        return sign * int(t)


def parse(text):
    """Parse an expression string into an exact AlgReal."""
    p = _Parser(_tokenize(text))
    v = p.parse_expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input: {p.tokens[p.i:]}")
    return v


def to_expr(value):
    """Serialise an AlgReal into the grammar (round-trips through parse)."""
    value = algebraic.as_algreal(value)
    if value.is_rational:
        r = value.as_rational()
        return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
    roots = algebraic.real_roots(polys.IntPoly(value.min_poly))
    index = next(i for i, r in enumerate(roots)
                 if algebraic.compare(r, value) == algebraic.EQUAL)
    coeffs = ",".join(str(c) for c in value.min_poly)
    return f"root({coeffs},{index})"
