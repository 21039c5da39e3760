"""Parser for integer polynomials in ``x`` and ``y``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (["*"] factor)*       implicit product only before x, y or "("
    factor := ("+" | "-") factor | atom ["^" INT]
    atom   := INT | "x" | "y" | "(" expr ")"

The result maps exponent pairs ``(i, j)`` to exact integer coefficients.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .surface import BiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\*\*|[-+*^()]))")


def _add(p: BiPoly, q: BiPoly, sign: int = 1) -> BiPoly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _mul(p: BiPoly, q: BiPoly) -> BiPoly:
    out: BiPoly = {}
    for (i1, j1), v1 in p.items():
        for (i2, j2), v2 in q.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _pow(p: BiPoly, e: int) -> BiPoly:
    out: BiPoly = {(0, 0): 1}
    while e:
        if e & 1:
            out = _mul(out, p)
        p = _mul(p, p)
        e >>= 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(text, pos, "an integer, x, y, an operator or a parenthesis")
            start = m.start(m.lastindex)
            kind = ("int", "var", "op")[m.lastindex - 1]
            val = m.group(m.lastindex)
            self.toks.append((kind, "^" if val == "**" else val, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, expected: str):
        raise ParseError(self.text, self.peek()[2], expected)

    def parse(self) -> BiPoly:
        if not self.toks:
            self.fail("a polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail("an operator or end of input")
        return dict(sorted(p.items()))

    def expr(self) -> BiPoly:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            sign = 1 if self.next()[1] == "+" else -1
            p = _add(p, self.term(), sign)
        return p

    def term(self) -> BiPoly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = _mul(p, self.factor())
            elif kind == "var" or (kind == "op" and val == "("):
                p = _mul(p, self.factor())
            else:
                return p

    def factor(self) -> BiPoly:
        kind, val, _ = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.next()
            p = self.factor()
            return p if val == "+" else {k: -v for k, v in p.items()}
        p = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.next()
            kind, val, _ = self.peek()
            if kind != "int":
                self.fail("a non-negative integer exponent")
            self.next()
            p = _pow(p, int(val))
        return p

    def atom(self) -> BiPoly:
        kind, val, _ = self.peek()
        if kind == "int":
            self.next()
            n = int(val)
            return {(0, 0): n} if n else {}
        if kind == "var":
            self.next()
            return {(1, 0): 1} if val == "x" else {(0, 1): 1}
        if kind == "op" and val == "(":
            self.next()
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("')'")
            self.next()
            return p
        self.fail("an integer, x, y or '('")


def parse_poly(text: str) -> BiPoly:
    """Parse ``text`` into an exponent map, e.g. ``"2x^2y - 1"`` -> ``{(0, 0): -1, (2, 1): 2}``."""
    return _Parser(text).parse()


def format_poly(terms: BiPoly) -> str:
    """Inverse of :func:`parse_poly` up to term order (descending total degree)."""
    items = sorted(((k, v) for k, v in terms.items() if v), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
    if not items:
        return "0"
    out = ""
    for n, ((i, j), c) in enumerate(items):
        mono = "*".join(
            f"{v}^{e}" if e > 1 else v for v, e in (("x", i), ("y", j)) if e
        )
        mag = abs(c)
        body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
        if n == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out
