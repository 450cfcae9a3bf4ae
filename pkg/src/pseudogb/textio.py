"""Text grammar for polynomials, field elements, and ideals.

Grammar: terms joined by '+'/'-'; coefficients are rational literals or
parenthesized expressions in the field generator symbol 'a'; '^' for
powers, '*' for products, '/' for division by a non-zero constant;
whitespace is insignificant.  Printing is canonical, so printing and
re-parsing round-trips exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .mpoly import Poly, PolyRing, MonomialOrder
from .numberfield import FieldElem, FracIdeal, NumberField


class PolyParseError(ValueError):
    pass


GENERATOR_SYMBOL = "a"


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, ring: PolyRing):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}, got {tok[1]!r}")
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        if self.peek()[0] != "end":
            raise PolyParseError(f"trailing input at {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.next()[0] == "-":
                sign = -sign
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise PolyParseError("division only by a non-zero constant")
                p = p * q.constant_coeff().inverse()
        return p

    def unary(self) -> Poly:
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.next()[0] == "-":
                sign = -sign
        p = self.power()
        return p if sign > 0 else -p

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            tok = self.next()
            if tok[0] != "num":
                raise PolyParseError("exponent must be a non-negative integer literal")
            e = tok[1]
            out = self.ring.one()
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self) -> Poly:
        tok = self.next()
        if tok[0] == "num":
            return self.ring.constant(tok[1])
        if tok[0] == "(":
            p = self.expr()
            self.expect(")")
            return p
        if tok[0] == "name":
            name = tok[1]
            if name in self.ring.names:
                return self.ring.var(self.ring.names.index(name))
            if name == GENERATOR_SYMBOL:
                return self.ring.constant(self.ring.field.gen())
            raise PolyParseError(f"unknown symbol {name!r}")
        raise PolyParseError(f"unexpected token {tok[1]!r}")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    return _Parser(_tokenize(text), ring).parse()


def parse_element(text: str, field: NumberField) -> FieldElem:
    ring = PolyRing.make(field, (), MonomialOrder.degrevlex())
    p = _Parser(_tokenize(text), ring).parse()
    return p.constant_coeff() if not p.is_zero() else field.zero()


def _format_int_poly_in_a(coeffs: list[int]) -> str:
    """Integer combination of 1, a, a^2, ... printed descending."""
    parts = []
    for k in reversed(range(len(coeffs))):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            mono = ""
        elif k == 1:
            mono = GENERATOR_SYMBOL
        else:
            mono = f"{GENERATOR_SYMBOL}^{k}"
        if mono:
            if c == 1:
                body = mono
            elif c == -1:
                body = f"-{mono}"
            else:
                body = f"{c}*{mono}"
        else:
            body = str(c)
        if not parts:
            parts.append(body)
        elif body.startswith("-"):
            parts.append(f" - {body[1:]}")
        else:
            parts.append(f" + {body}")
    return "".join(parts) if parts else "0"


def format_element(e: FieldElem) -> str:
    """Canonical expression in the generator symbol, denominator factored out."""
    if e.is_rational():
        return str(e.as_fraction())
    pc = e.field._coords_to_power(list(e.coords))
    q = 1
    for c in pc:
        q = lcm(q, c.denominator)
    ints = [int(c * q) for c in pc]
    body = _format_int_poly_in_a(ints)
    if q == 1:
        return body
    if " + " in body or " - " in body:
        return f"({body})/{q}"
    return f"{body}/{q}"


def format_ideal(I: FracIdeal) -> str:
    rows = ",".join("[" + ",".join(str(e) for e in row) + "]" for row in I.num.data)
    return f"ideal(den={I.den}; rows=[{rows}])"


def _format_monomial(names, exp) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    names = p.ring.names
    out = []
    for c, exp in p.terms:
        mono = _format_monomial(names, exp)
        if c.is_rational():
            q = c.as_fraction()
            neg = q < 0
            q = abs(q)
            if not mono:
                body = str(q)
            elif q == 1:
                body = mono
            else:
                body = f"{q}*{mono}"
        else:
            neg = False
            es = format_element(c)
            body = f"({es})*{mono}" if mono else f"({es})"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
