"""Scalar and matrix text grammar shared by the library and the CLI.

    scalar   := ["+"|"-"] term (("+"|"-") term)*
    term     := factor (("*"|"/") factor)*
    factor   := rational | "sqrt" "(" scalar ")"
              | "X" ("^" "(" rational ")")?  | "(" scalar ")"
    rational := ["-"] int ("/" posint)?

Matrices: rows separated by ";" or newlines, entries by ",".  Parsing
evaluates directly to exact values; printing any value re-parses to an
equal value.  "X" is only admitted in the Puiseux field.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .linalg import Matrix, PUISEUX, TOWER
from .puiseux import PuiseuxScalar
from .tower import TowerScalar, sqrt_positive as tower_sqrt

F = Fraction


class _Tokens:
    SYMBOLS = ("+", "-", "*", "/", "(", ")", "^")

    def __init__(self, text: str):
        self.items = []  # (kind, value, line, col)
        line, col = 1, 1
        i = 0
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                line += 1
                col = 1
                i += 1
                continue
            if ch.isspace():
                col += 1
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.items.append(("int", int(text[i:j]), line, col))
                col += j - i
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < len(text) and text[j].isalnum():
                    j += 1
                self.items.append(("name", text[i:j], line, col))
                col += j - i
                i = j
                continue
            if ch in self.SYMBOLS:
                self.items.append(("sym", ch, line, col))
                col += 1
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", line, col)
        self.pos = 0

    def peek(self):
        if self.pos < len(self.items):
            return self.items[self.pos]
        return ("eof", None, -1, -1)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_sym(self, sym):
        kind, value, line, col = self.next()
        if kind != "sym" or value != sym:
            raise ParseError(f"expected {sym!r}, found {value!r}", line, col)

    def error(self, message):
        _, _, line, col = self.peek()
        raise ParseError(message, line, col)


class _Grammar:
    def __init__(self, field: str):
        if field not in ("tower", "puiseux"):
            raise ParseError(f"unknown field {field!r}")
        self.field = field

    # -- value helpers -------------------------------------------------------

    def from_fraction(self, q):
        if self.field == "tower":
            return TowerScalar.from_fraction(q)
        return PuiseuxScalar.constant(q)

    def sqrt(self, v):
        if self.field == "tower":
            return tower_sqrt(v)
        return v.sqrt_positive()

    # -- productions ---------------------------------------------------------

    def scalar(self, toks: _Tokens):
        kind, value, _, _ = toks.peek()
        negate = False
        if kind == "sym" and value in ("+", "-"):
            toks.next()
            negate = value == "-"
        total = self.term(toks)
        if negate:
            total = -total
        while True:
            kind, value, _, _ = toks.peek()
            if kind == "sym" and value in ("+", "-"):
                toks.next()
                rhs = self.term(toks)
                total = total + rhs if value == "+" else total - rhs
            else:
                return total

    def term(self, toks: _Tokens):
        total = self.factor(toks)
        while True:
            kind, value, _, _ = toks.peek()
            if kind == "sym" and value in ("*", "/"):
                toks.next()
                rhs = self.factor(toks)
                total = total * rhs if value == "*" else total / rhs
            else:
                return total

    def factor(self, toks: _Tokens):
        kind, value, line, col = toks.peek()
        if kind == "int":
            return self.from_fraction(self.rational(toks))
        if kind == "sym" and value == "(":
            toks.next()
            inner = self.scalar(toks)
            toks.expect_sym(")")
            return inner
        if kind == "name" and value == "sqrt":
            toks.next()
            toks.expect_sym("(")
            inner = self.scalar(toks)
            toks.expect_sym(")")
            return self.sqrt(inner)
        if kind == "name" and value == "X":
            if self.field != "puiseux":
                raise ParseError("X is only available in the puiseux field", line, col)
            toks.next()
            kind, value, _, _ = toks.peek()
            exponent = F(1)
            if kind == "sym" and value == "^":
                toks.next()
                toks.expect_sym("(")
                exponent = self.rational(toks)
                toks.expect_sym(")")
            return PuiseuxScalar.monomial(1, exponent)
        toks.error(f"expected a factor, found {value!r}")

    def rational(self, toks: _Tokens) -> Fraction:
        kind, value, line, col = toks.next()
        sign = 1
        if kind == "sym" and value == "-":
            sign = -1
            kind, value, line, col = toks.next()
        if kind != "int":
            raise ParseError(f"expected an integer, found {value!r}", line, col)
        num = value
        kind, nxt, _, _ = toks.peek()
        if kind == "sym" and nxt == "/":
            save = toks.pos
            toks.next()
            kind, den, line2, col2 = toks.next()
            if kind != "int":
                # the slash belonged to the term level (e.g. "2/sqrt(2)")
                toks.pos = save
                return F(sign * num)
            if den == 0:
                raise ParseError("zero denominator", line2, col2)
            return F(sign * num, den)
        return F(sign * num)


def parse_scalar(text: str, field: str = "tower"):
    toks = _Tokens(text)
    value = _Grammar(field).scalar(toks)
    if toks.peek()[0] != "eof":
        toks.error(f"trailing input {toks.peek()[1]!r}")
    return value


def parse_matrix(text: str, field: str = "tower") -> Matrix:
    rows = []
    grammar = _Grammar(field)
    line_no = 0
    for chunk in text.replace(";", "\n").splitlines():
        line_no += 1
        if not chunk.strip():
            continue
        row = []
        for part in chunk.split(","):
            if not part.strip():
                raise ParseError("empty matrix entry", line_no, 1)
            toks = _Tokens(part)
            value = grammar.scalar(toks)
            if toks.peek()[0] != "eof":
                toks.error(f"trailing input {toks.peek()[1]!r}")
            row.append(value)
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("ragged matrix rows")
    return Matrix(TOWER if field == "tower" else PUISEUX, rows)


def print_matrix(m: Matrix) -> str:
    return "\n".join(", ".join(str(x) for x in row) for row in m.data)
