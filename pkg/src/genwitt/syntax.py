"""Text form of elements.

Grammar (whitespace insignificant)::

    element  := '0' | ['-'] term (('+' | '-') term)*
    term     := [rational '*'] '(' ints '|' ints ')' '_' int
    rational := ['-'] digits ['/' digits]
    ints     := int (',' int)*

Function elements use the same grammar without the ``_k`` suffix.  Printing
lists terms lex-descending, omits unit coefficients and writes a leading
negative term as ``-(...)``.
"""

from __future__ import annotations

import re
from .algebra import AlgebraConfig, BasisElement, Element, FunctionElement, FunctionTerm
from .scalars import Rational, format_rational

__all__ = [
    "ElementSyntaxError",
    "parse_element",
    "parse_basis",
    "parse_function",
    "format_element",
]


class ElementSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int, line: int = 1):
        self.message = message
        self.text = text
        self.pos = pos
        self.line = line
        self.column = pos + 1
        super().__init__(f"line {line}, column {self.column}: {message}")


_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


class _Parser:
    def __init__(self, text: str, n: int | None, functions: bool, line: int):
        self.text = text
        self.n = n
        self.functions = functions
        self.line = line
        self.toks: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1) is not None:
                self.toks.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.toks.append((m.group(2), m.group(2), m.start(2)))
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def error(self, message: str, pos: int | None = None):
        if pos is None:
            pos = self.toks[self.i][2]
        raise ElementSyntaxError(message, self.text, pos, self.line)

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str) -> str:
        tok = self.toks[self.i]
        if tok[0] != kind:
            shown = "end of input" if tok[0] == "end" else repr(tok[1])
            self.error(f"expected {kind!r}, found {shown}")
        self.i += 1
        return tok[1]

    def signed_int(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.i += 1
            sign = -1
        elif self.peek() == "+":
            self.i += 1
        return sign * int(self.take("int"))

    def ints(self) -> tuple[int, ...]:
        out = [self.signed_int()]
        while self.peek() == ",":
            self.i += 1
            out.append(self.signed_int())
        return tuple(out)

    def key(self):
        start = self.toks[self.i][2]
        self.take("(")
        upper = self.ints()
        self.take("|")
        lower = self.ints()
        self.take(")")
        if len(upper) != len(lower):
            self.error(f"{len(upper)} upper but {len(lower)} lower indices", start)
        if self.n is not None and len(upper) != self.n:
            self.error(f"expected {self.n} indices per vector (rank n={self.n}), got {len(upper)}", start)
        if self.functions:
            return FunctionTerm(upper, lower)
        self.take("_")
        k_pos = self.toks[self.i][2]
        k = int(self.take("int"))
        width = self.n if self.n is not None else len(upper)
        if not 1 <= k <= width:
            self.error(f"direction {k} out of range 1..{width}", k_pos)
        return BasisElement(upper, lower, k)

    def term(self, sign: int, acc: dict) -> None:
        coeff = Rational(sign)
        if self.peek() == "-":
            self.i += 1
            coeff = -coeff
        if self.peek() == "int":
            num = int(self.take("int"))
            den = 1
            if self.peek() == "/":
                self.i += 1
                pos = self.toks[self.i][2]
                den = int(self.take("int"))
                if den == 0:
                    self.error("zero denominator", pos)
            if self.peek() != "*":
                # a bare rational is only legal as the literal zero element
                self.error("expected '*' after coefficient")
            self.i += 1
            coeff *= Rational(num, den)
        key = self.key()
        nv = acc.get(key, 0) + coeff
        if nv:
            acc[key] = nv
        else:
            acc.pop(key, None)

    def element(self) -> dict:
        acc: dict = {}
        if self.peek() == "int" and self.toks[self.i][1] == "0" and self.toks[self.i + 1][0] == "end":
            return acc
        self.term(1, acc)
        while self.peek() in ("+", "-"):
            sign = 1 if self.take(self.peek()) == "+" else -1
            self.term(sign, acc)
        if self.peek() != "end":
            self.error(f"unexpected {self.toks[self.i][1]!r}")
        return acc


def _rank(n) -> int | None:
    return n.n if isinstance(n, AlgebraConfig) else n


def parse_element(text: str, n: int | AlgebraConfig | None = None, *, line: int = 1) -> Element:
    """Parse an element; ``n`` (or a config) enforces the rank."""
    return Element._wrap(_Parser(text, _rank(n), False, line).element())


def parse_function(text: str, n: int | AlgebraConfig | None = None, *, line: int = 1) -> FunctionElement:
    return FunctionElement._wrap(_Parser(text, _rank(n), True, line).element())


def parse_basis(text: str, n: int | AlgebraConfig | None = None, *, line: int = 1) -> BasisElement:
    p = _Parser(text, _rank(n), False, line)
    b = p.key()
    if p.peek() != "end":
        p.error(f"unexpected {p.toks[p.i][1]!r} after basis element")
    return b


def format_element(x: Element) -> str:
    parts: list[str] = []
    for key, c in x:
        neg = c < 0
        mag = -c if neg else c
        body = str(key) if mag == 1 else f"{format_rational(mag)}*{key}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts) if parts else "0"
