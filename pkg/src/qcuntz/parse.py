"""Text syntax for scalars, Cuntz elements, generator words, and u-monomials.

Grammar (informally):

    element :=  ['-'] term (('+'|'-') term)*
    term    :=  scalar | [scalar] factor+
    factor  :=  's' INT ['*']
    scalar  :=  products/quotients of INT, 'q', 'q^k', parenthesized sums

A scalar directly in front of factors binds multiplicatively: q s1 s2* is
q * s1 s2*.  Additive scalar expressions need parentheses in that position:
(q - q^-1) s1 s2.  Generator words are space-separated e1 f2 k1 k1^-1;
u-monomials are u<row><col> tokens (single digits, d <= 9).
"""

from __future__ import annotations

import re

from .cuntz import CuntzElement, Word
from .qscalar import ONE, QScalar, ZERO
from .uq import E, F, K, KINV, UqGenerator, UqWord


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<sgen>s(?P<sidx>\d+)(?P<star>\*)?)"
    r"|(?P<int>\d+)"
    r"|(?P<q>q)"
    r"|(?P<op>[\^+\-*/()])"
    r")"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group("sgen"):
            tokens.append(("sgen", (int(m.group("sidx")), bool(m.group("star"))), pos))
        elif m.group("int"):
            tokens.append(("int", int(m.group("int")), pos))
        elif m.group("q"):
            tokens.append(("q", None, pos))
        else:
            tokens.append(("op", m.group("op"), pos))
        pos = m.end()
    tokens.append(("end", None, pos))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        t = self.tokens[self.k]
        self.k += 1
        return t

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    # scalar grammar ----------------------------------------------------

    def scalar_additive(self) -> QScalar:
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        acc = self.scalar_mult()
        if negate:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.scalar_mult()
                acc = acc - rhs if val == "-" else acc + rhs
            else:
                return acc

    def scalar_mult(self) -> QScalar:
        acc = self.scalar_power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.scalar_power()
                acc = acc / rhs if val == "/" else acc * rhs
            elif kind in ("int", "q") or (kind == "op" and val == "("):
                # juxtaposition within a scalar
                acc = acc * self.scalar_power()
            else:
                return acc

    def scalar_power(self) -> QScalar:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.scalar_power()
        base_is_q = False
        if kind == "int":
            self.next()
            base = QScalar(val)
        elif kind == "q":
            self.next()
            base = None
            base_is_q = True
        elif kind == "op" and val == "(":
            self.next()
            base = self.scalar_additive()
            self.expect_op(")")
        else:
            raise ParseError("expected a scalar", pos)
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind2, val2, pos2 = self.next()
            sign = 1
            if kind2 == "op" and val2 == "-":
                sign = -1
                kind2, val2, pos2 = self.next()
            if kind2 != "int":
                raise ParseError("expected an integer exponent", pos2)
            e = sign * val2
            if base_is_q:
                return QScalar.q_power(e)
            return base**e
        return QScalar.q_power(1) if base_is_q else base

    # element grammar -----------------------------------------------------

    def element(self, d: int) -> CuntzElement:
        acc = CuntzElement.zero(d)
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        acc = acc + self.term(d, sign)
        while True:
            kind, val, pos = self.peek()
            if kind == "end":
                return acc
            if kind == "op" and val in "+-":
                self.next()
                acc = acc + self.term(d, -1 if val == "-" else 1)
            else:
                raise ParseError("expected '+' or '-' between terms", pos)

    def term(self, d: int, sign: int) -> CuntzElement:
        kind, val, pos = self.peek()
        coeff = ONE
        if kind in ("int", "q") or (kind == "op" and val == "("):
            coeff = self.scalar_mult()
        mu: list[int] = []
        nu_display: list[int] = []
        seen_star = False
        factors = 0
        while True:
            kind, val, pos = self.peek()
            if kind != "sgen":
                break
            self.next()
            idx, star = val
            if not 1 <= idx <= d:
                raise ParseError(f"generator index {idx} outside 1..{d}", pos)
            if star:
                seen_star = True
                nu_display.append(idx)
            else:
                if seen_star:
                    raise ParseError("creation factor after a starred factor", pos)
                mu.append(idx)
            factors += 1
        if sign < 0:
            coeff = -coeff
        w = Word(tuple(mu), tuple(reversed(nu_display)))
        return CuntzElement(d, {w: coeff})


def parse_scalar(text: str) -> QScalar:
    p = _Parser(text)
    out = p.scalar_additive()
    kind, _, pos = p.peek()
    if kind != "end":
        raise ParseError("trailing input after scalar", pos)
    return out


def parse_element(text: str, d: int) -> CuntzElement:
    """Parse a Cuntz-algebra expression; indices out of 1..d are rejected."""
    if d < 1:
        raise ValueError("need d >= 1")
    return _Parser(text).element(d)


_UQ_TOKEN = re.compile(r"([efk])(\d+)(\^-1)?$")


def parse_uq_word(text: str, n: int) -> UqWord:
    """Space-separated generator word, e.g. 'e1 f2 k1^-1'; empty input is
    the unit."""
    gens = []
    for chunk in text.split():
        m = _UQ_TOKEN.match(chunk)
        if not m:
            raise ValueError(f"bad generator token {chunk!r}")
        kind, idx, inv = m.group(1), int(m.group(2)), m.group(3)
        if not 1 <= idx <= n - 1:
            raise ValueError(f"generator index {idx} outside 1..{n - 1}")
        if inv:
            if kind != "k":
                raise ValueError(f"only k admits an inverse, got {chunk!r}")
            gens.append(UqGenerator(KINV, idx))
        elif kind == "e":
            gens.append(UqGenerator(E, idx))
        elif kind == "f":
            gens.append(UqGenerator(F, idx))
        else:
            gens.append(UqGenerator(K, idx))
    return tuple(gens)


_UMONO_TOKEN = re.compile(r"u(\d)(\d)$")


def parse_umonomial(text: str, d: int) -> tuple[tuple[int, int], ...]:
    """Space-separated u-factors, e.g. 'u11 u23'; empty input is the unit."""
    out = []
    for chunk in text.split():
        m = _UMONO_TOKEN.match(chunk)
        if not m:
            raise ValueError(f"bad matrix-generator token {chunk!r}")
        r, c = int(m.group(1)), int(m.group(2))
        if not (1 <= r <= d and 1 <= c <= d):
            raise ValueError(f"u_{r}{c} outside 1..{d}")
        out.append((r, c))
    return tuple(out)


def element_to_str(x: CuntzElement) -> str:
    return str(x)
