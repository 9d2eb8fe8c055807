"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant, multiplication is always explicit)::

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := rational | 'x' | 'y' | 'u' | 'v' | '(' expr ')'
    rational := int | int '/' posint
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Tuple

from .algebra import VARS, MPoly, NonConformingInput
from .keller import CurveF


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.text = text


class NotMonicInY(ValueError):
    pass


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch in VARS:
            tokens.append(("var", ch, i))
            i += 1
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", i, text)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind: str):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolySyntaxError(f"expected {kind}, found {what}", tok[2], self.text)
        self.pos += 1
        return tok

    def expr(self) -> MPoly:
        negate = False
        if self.peek()[0] == "-":
            self.pos += 1
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MPoly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> MPoly:
        b = self.base()
        if self.peek()[0] == "^":
            self.pos += 1
            b = b ** int(self.take("int")[1])
        return b

    def base(self) -> MPoly:
        kind, val, at = self.peek()
        if kind == "int":
            self.pos += 1
            num = int(val)
            if self.peek()[0] == "/":
                self.pos += 1
                den_tok = self.take("int")
                den = int(den_tok[1])
                if den == 0:
                    raise PolySyntaxError("zero denominator", den_tok[2], self.text)
                return MPoly.const(Fraction(num, den))
            return MPoly.const(num)
        if kind == "var":
            self.pos += 1
            return MPoly.var(val)
        if kind == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(val)
        raise PolySyntaxError(f"expected a number, variable or '(', found {what}", at, self.text)


def parse_poly(text: str) -> MPoly:
    p = _Parser(text)
    result = p.expr()
    p.take("end")
    return result


def parse_curve(text: str) -> Tuple[CurveF, List[str]]:
    """Parse a polynomial in x, y monic in y; returns the curve and any warnings."""
    return curve_from_poly(parse_poly(text))


def curve_from_poly(f: MPoly) -> Tuple[CurveF, List[str]]:
    if not f.involves_only(("x", "y")):
        raise NonConformingInput(f"{f} must involve only x and y")
    cs = f.coefficients_in("y")
    m = len(cs) - 1
    if m < 2:
        raise NotMonicInY(f"{f} has y-degree {max(m, 0)}; at least 2 is required")
    lead = cs[-1]
    warnings = []
    if not lead.is_constant():
        raise NotMonicInY(f"leading y-coefficient {lead} of {f} is not constant")
    if lead != 1:
        c = lead.constant_value()
        warnings.append(f"leading y-coefficient {c} scaled to 1")
        f = f / c
    return CurveF.from_poly(f), warnings


def curve_from_json(obj) -> CurveF:
    """``{"m": int, "a": [[ratstr, ...], ...]}`` with each a_i ascending in x."""
    if not isinstance(obj, dict) or "m" not in obj or "a" not in obj:
        raise ValueError('JSON input must be an object {"m": int, "a": [[...], ...]}')
    m, rows = obj["m"], obj["a"]
    if not isinstance(m, int) or not isinstance(rows, list) or len(rows) != m:
        raise ValueError(f"'a' must list exactly m = {m} coefficient arrays")
    parsed = []
    for row in rows:
        if not isinstance(row, list):
            raise ValueError("each a_i must be an array of rationals")
        parsed.append([Fraction(str(c)) for c in row])
    return CurveF.from_coefficients(parsed)


def load_curve(text: str) -> Tuple[CurveF, List[str]]:
    """File contents: a JSON object or a single expression."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return curve_from_json(json.loads(stripped)), []
    return parse_curve(stripped)
