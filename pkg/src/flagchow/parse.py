"""Reading polynomials from text.

Grammar (whitespace ignored, ``*`` optional between factors)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power ('*'? power)*
    power  := atom ('^' nat)?
    atom   := int ('/' int)? | ident | '(' expr ')'
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import NotPLocalError, ParseError
from .polyring import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def tokenize(text):
    text = text.replace("−", "-")
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, ring, definitions):
        self.text = text
        self.ring = ring
        self.defs = definitions or {}
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def _starts_atom(self):
        return self.peek()[0] in ("num", "ident", "(")

    def term(self):
        if not self._starts_atom():
            raise self.error("expected a term")
        out = self.power()
        while True:
            if self.peek()[0] == "*":
                self.take()
                if not self._starts_atom():
                    raise self.error("expected a factor after '*'")
                out = out * self.power()
            elif self._starts_atom():
                out = out * self.power()
            else:
                return out

    def power(self):
        tok = self.peek()
        base, is_gen_odd = self.atom()
        if self.peek()[0] == "^":
            self.take()
            e = self.take("num")[1]
            if is_gen_odd and e > 1:
                raise ParseError(f"odd generator {tok[1]} raised to power {e}", tok[2], self.text)
            return base ** e
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            c = Fraction(val)
            if self.peek()[0] == "/":
                self.take()
                den = self.take("num")[1]
                if den == 0:
                    raise ParseError("division by zero", pos, self.text)
                c = Fraction(val, den)
            try:
                return self.ring.scalar(c), False
            except NotPLocalError:
                raise ParseError(f"denominator of {c} is divisible by {self.ring.p}", pos, self.text)
        if kind == "ident":
            if val in self.ring.index:
                g = self.ring.generators[self.ring.index[val]]
                return self.ring.gen(val), g.is_odd
            if val in self.defs:
                return self.defs[val], False
            raise ParseError(f"unknown identifier {val!r}", pos, self.text)
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner, False
        raise ParseError(f"unexpected {val!r}", pos, self.text)


def parse_poly(text: str, ring, definitions=None) -> Polynomial:
    """Parse ``text`` as an element of ``ring``.

    ``definitions`` maps extra names (shorthands such as ``u`` or ``c1``) to
    polynomials of the same ring.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text, ring, definitions).parse()
