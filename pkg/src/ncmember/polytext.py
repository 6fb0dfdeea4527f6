"""
Text form of noncommutative polynomials.

Grammar (whitespace between tokens is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff? ('*'? factor)*
    factor := var ('^' nat)?
    var    := 'x' nat | 'y' nat
    coeff  := nat | nat '/' nat

Juxtaposition and ``*`` both mean the (noncommutative) product.  There are
no parentheses.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .freealg import NcPoly

MAX_EXPONENT = 1000
MAX_DIGITS = 4000

_OPS = "+-*/^"


class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, message: str, text: str, pos: int):
        self.offset = len(text[:pos].encode("utf-8", "surrogatepass"))
        self.message = message
        super().__init__(f"{message} at byte {self.offset}")

    @classmethod
    def at_byte(cls, message: str, offset: int) -> "PolySyntaxError":
        err = cls(message, "", 0)
        err.offset = offset
        err.args = (f"{message} at byte {offset}",)
        return err


def _tokenize(text: str) -> list:
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif "0" <= c <= "9":
            j = i
            while j < n and "0" <= text[j] <= "9":
                j += 1
            if j - i > MAX_DIGITS:
                raise PolySyntaxError("number too long", text, i)
            toks.append(("int", int(text[i:j]), i))
            i = j
        elif c in "xy":
            j = i + 1
            while j < n and "0" <= text[j] <= "9":
                j += 1
            if j == i + 1:
                raise PolySyntaxError(f"expected an index after {c!r}", text, j)
            if j - i > MAX_DIGITS:
                raise PolySyntaxError("index too long", text, i)
            k = int(text[i + 1:j])
            if k < 1:
                raise PolySyntaxError("variable indices start at 1", text, i + 1)
            toks.append(("var", (c, k), i))
            i = j
        elif c in _OPS:
            toks.append((c, c, i))
            i += 1
        elif c in "()":
            raise PolySyntaxError("parentheses are not supported", text, i)
        else:
            raise PolySyntaxError(f"unexpected character {c!r}", text, i)
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.letter = None
        self.maxvar = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, message, tok=None):
        raise PolySyntaxError(message, self.text, (tok or self.tok)[2])

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self) -> dict:
        terms: dict = {}
        sign = 1
        if self.tok[0] in "+-":
            sign = -1 if self.advance()[0] == "-" else 1
        while True:
            c, w = self.term()
            terms[w] = terms.get(w, 0) + sign * c
            kind = self.tok[0]
            if kind == "end":
                return terms
            if kind not in ("+", "-"):
                self.fail("expected '+', '-' or end of input")
            sign = -1 if self.advance()[0] == "-" else 1

    def term(self):
        start = self.tok
        coeff = Fraction(1)
        seen = False
        if self.tok[0] == "int":
            coeff = self.coeff()
            seen = True
        word: tuple = ()
        while True:
            if self.tok[0] == "*":
                self.advance()
                if self.tok[0] != "var":
                    self.fail("expected a variable after '*'")
            elif self.tok[0] != "var":
                break
            word += self.factor()
            seen = True
        if not seen:
            self.fail("expected a term", start)
        return coeff, word

    def coeff(self) -> Fraction:
        num = self.advance()[1]
        if self.tok[0] != "/":
            return Fraction(num)
        self.advance()
        if self.tok[0] != "int":
            self.fail("expected a denominator after '/'")
        den_tok = self.advance()
        if den_tok[1] == 0:
            self.fail("zero denominator", den_tok)
        return Fraction(num, den_tok[1])

    def factor(self) -> tuple:
        vtok = self.advance()
        letter, k = vtok[1]
        if self.letter is None:
            self.letter = letter
        elif letter != self.letter:
            self.fail(f"mixed variable letters {self.letter!r} and {letter!r}", vtok)
        self.maxvar = max(self.maxvar, k)
        if self.tok[0] != "^":
            return (k,)
        self.advance()
        if self.tok[0] != "int":
            self.fail("expected an exponent after '^'")
        etok = self.advance()
        if etok[1] > MAX_EXPONENT:
            self.fail(f"exponent larger than {MAX_EXPONENT}", etok)
        return (k,) * etok[1]


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise PolySyntaxError.at_byte("invalid UTF-8", exc.start) from None


def parse_poly(text, nvars: Optional[int] = None, letter: Optional[str] = None) -> NcPoly:
    """Parse polynomial text (``str``, or UTF-8 ``bytes``).

    The alphabet size is the larger of ``nvars`` and the highest index used.
    With ``letter`` set, variables must all use that letter.
    """
    if isinstance(text, (bytes, bytearray)):
        text = _decode(bytes(text))
    p = _Parser(text)
    terms = p.expr()
    if letter is not None and p.letter not in (None, letter):
        raise PolySyntaxError(f"expected variables named {letter!r}, got {p.letter!r}", text, 0)
    return NcPoly(max(nvars or 0, p.maxvar, 1), terms)


def format_word(w: tuple, letter: str = "x") -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        parts.append(f"{letter}{w[i]}" + (f"^{run}" if run > 1 else ""))
        i = j
    return "*".join(parts)


def format_poly(p: NcPoly, letter: str = "x") -> str:
    """Canonical text: highest degree first, lexicographic within a degree."""
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda t: (-len(t[0]), t[0]))
    out = []
    for n, (w, c) in enumerate(items):
        mag = abs(c)
        if not w:
            body = str(mag)
        elif mag == 1:
            body = format_word(w, letter)
        else:
            body = f"{mag}*{format_word(w, letter)}"
        if n == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)
