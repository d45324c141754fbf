"""Exact arithmetic in the field Q(q) of rational functions in one variable q.

A scalar is a reduced fraction num/den of integer-coefficient polynomials.
Canonical form: gcd(num, den) = 1 in Z[q] (integer contents included) and
the leading coefficient of den is positive, so equal values have identical
representations and == / hash are structural.  Zero is ()/ (1,).

Laurent quantities such as q + q^-1 are fractions with a monomial
denominator; there is no separate Laurent type.  The symmetric q-integer
convention is used throughout: [m] = (q^m - q^-m)/(q - q^-1).
"""

from __future__ import annotations

import math
from fractions import Fraction

# ---------------------------------------------------------------------------
# dense integer polynomials as coefficient tuples, index = exponent,
# no trailing zeros, () is the zero polynomial


def _ptrim(c: list) -> tuple:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] += x
    return _ptrim(c)


def _pneg(a):
    return tuple(-x for x in a)

def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    la, lb = len(a), len(b)
    if la == 1:
        x = a[0]
        return b if x == 1 else tuple(y * x for y in b)
    if lb == 1:
        y = b[0]
        return a if y == 1 else tuple(x * y for x in a)
    # monomial factors (a single trailing coefficient) just shift
    if not any(a[: la - 1]):
        x = a[-1]
        body = b if x == 1 else tuple(y * x for y in b)
        return (0,) * (la - 1) + tuple(body)
    if not any(b[: lb - 1]):
        y = b[-1]
        body = a if y == 1 else tuple(x * y for x in a)
        return (0,) * (lb - 1) + tuple(body)
    c = [0] * (la + lb - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _ptrim(c)


def _pscale(a, k: int):
    if k == 0:
        return ()
    return tuple(x * k for x in a)


def _pcontent(a) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def _pprim(a):
    """(content, primitive part) with the sign carried by the content."""
    if not a:
        return 0, ()
    g = _pcontent(a)
    if a[-1] < 0:
        g = -g
    return g, tuple(x // g for x in a)


def _pdivexact(a, b):
    """Quotient a/b when b divides a exactly over Q; coefficients stay integral
    for the reduced fractions produced here."""
    if not a:
        return ()
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        if r[i]:
            t, rem = divmod(r[i], lb)
            if rem:
                raise ArithmeticError("non-exact polynomial division")
            q[i - db] = t
            for j in range(db + 1):
                r[i - db + j] -= t * b[j]
    if any(r):
        raise ArithmeticError("non-exact polynomial division")
    return _ptrim(q)


def _prem_pseudo(a, b):
    """Pseudo-remainder of a by b over Z."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for i in range(da, db - 1, -1):
        lead = r[i]
        if lead:
            for k in range(len(r)):
                r[k] *= lb
            for j in range(db + 1):
                r[i - db + j] -= lead * b[j]
            r[i] = 0
    return _ptrim(r)


def _pval(a) -> int:
    """Index of the lowest nonzero coefficient (q-adic valuation)."""
    for i, x in enumerate(a):
        if x:
            return i
    return 0


def _pgcd(a, b):
    """gcd in Z[q], positive leading coefficient; primitive-PRS Euclid with
    fast paths for the monomial coefficients that dominate this workload."""
    if not a:
        g, p = _pprim(b)
        return _pscale(p, abs(g)) if p else ()
    if not b:
        g, p = _pprim(a)
        return _pscale(p, abs(g)) if p else ()
    va, vb = _pval(a), _pval(b)
    v = min(va, vb)
    a = a[va:]
    b = b[vb:]
    if len(a) == 1 or len(b) == 1:
        g = math.gcd(_pcontent(a), _pcontent(b))
        return (0,) * v + (g,)
    ca, pa = _pprim(a)
    cb, pb = _pprim(b)
    c = math.gcd(ca, cb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem_pseudo(pa, pb)
        if r:
            _, r = _pprim(r)
        pa, pb = pb, r
    if pa[-1] < 0:
        pa = _pneg(pa)
    return (0,) * v + _pscale(pa, c)


def _pshift(a, k: int):
    """Multiply by q^k, k >= 0."""
    if not a or k == 0:
        return a
    return (0,) * k + tuple(a)


def _peval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pstr(a) -> str:
    if not a:
        return "0"
    parts = []
    for e in range(len(a) - 1, -1, -1):
        c = a[e]
        if c == 0:
            continue
        if e == 0:
            mono = str(abs(c))
        else:
            head = "" if abs(c) == 1 else f"{abs(c)}*"
            mono = f"{head}q" if e == 1 else f"{head}q^{e}"
        if not parts:
            parts.append(mono if c > 0 else "-" + mono)
        else:
            parts.append(("+ " if c > 0 else "- ") + mono)
    return " ".join(parts)


# ---------------------------------------------------------------------------


class QScalar:
    """An element of Q(q), kept in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, _raw=False):
        if _raw:
            # trusted canonical input
            self.num = num
            self.den = den
            return
        if isinstance(num, QScalar):
            if den is not None:
                raise TypeError("QScalar(den=...) with QScalar numerator")
            self.num, self.den = num.num, num.den
            return
        if isinstance(num, Fraction):
            n, d = (num.numerator,), (num.denominator,)
        elif isinstance(num, int):
            n = (num,) if num else ()
            d = (1,)
        elif isinstance(num, tuple):
            n = _ptrim(list(num))
            d = (1,)
        else:
            raise TypeError(f"cannot build QScalar from {type(num).__name__}")
        if den is not None:
            if isinstance(den, int):
                d2 = (den,) if den else ()
            elif isinstance(den, tuple):
                d2 = _ptrim(list(den))
            else:
                raise TypeError("denominator must be int or coefficient tuple")
            d = _pmul(d, d2)
        n, d = _reduce(n, d)
        self.num, self.den = n, d

    # -- constructors -------------------------------------------------

    @staticmethod
    def q_power(k: int) -> "QScalar":
        """The monomial q^k; k may be negative."""
        if k >= 0:
            return QScalar(_pshift((1,), k), (1,), _raw=True)
        return QScalar((1,), _pshift((1,), -k), _raw=True)

    @staticmethod
    def from_fraction(f: Fraction) -> "QScalar":
        return QScalar(f)

    # -- ring/field structure ------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            n = _padd(self.num, other.num)
            if self.den == (1,):
                return QScalar(n, (1,), _raw=True)
            return QScalar(*_reduce(n, self.den), _raw=True)
        g = _pgcd(self.den, other.den)
        if g == (1,):
            n = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
            d = _pmul(self.den, other.den)
        else:
            da = _pdivexact(self.den, g)
            db = _pdivexact(other.den, g)
            n = _padd(_pmul(self.num, db), _pmul(other.num, da))
            d = _pmul(da, other.den)
        return QScalar(*_reduce(n, d), _raw=True)

    __radd__ = __add__

    def __neg__(self):
        return QScalar(_pneg(self.num), self.den, _raw=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        one = (1,)
        sd, od = self.den, other.den
        if sd == one:
            if od == one:
                return QScalar(_pmul(self.num, other.num), one, _raw=True)
            g = _pgcd(self.num, od)
            n1 = self.num if g == one else _pdivexact(self.num, g)
            d = od if g == one else _pdivexact(od, g)
            return QScalar(_pmul(n1, other.num), d, _raw=True)
        if od == one:
            g = _pgcd(other.num, sd)
            n2 = other.num if g == one else _pdivexact(other.num, g)
            d = sd if g == one else _pdivexact(sd, g)
            return QScalar(_pmul(self.num, n2), d, _raw=True)
        g1 = _pgcd(self.num, od)
        g2 = _pgcd(other.num, sd)
        n1 = self.num if g1 == one else _pdivexact(self.num, g1)
        d2 = od if g1 == one else _pdivexact(od, g1)
        n2 = other.num if g2 == one else _pdivexact(other.num, g2)
        d1 = sd if g2 == one else _pdivexact(sd, g2)
        n, d = _pmul(n1, n2), _pmul(d1, d2)
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return QScalar(n, d, _raw=True)

    __rmul__ = __mul__

    def inv(self) -> "QScalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        n, d = self.den, self.num
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return QScalar(n, d, _raw=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k == 0:
            return ONE
        base = self if k > 0 else self.inv()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    # -- predicates, hashing -------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- evaluation and display ----------------------------------------

    def eval(self, point) -> Fraction:
        """Exact value at q = point (a rational); raises on a pole."""
        x = Fraction(point)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole at q = {x}")
        return _peval(self.num, x) / d

    def __str__(self):
        if not self.num:
            return "0"
        if self.den == (1,):
            return _pstr(self.num)
        # monomial denominator: print as a Laurent polynomial
        if len([c for c in self.den if c]) == 1 and self.den[-1] == 1:
            k = len(self.den) - 1
            parts = []
            for e in range(len(self.num) - 1, -1, -1):
                c = self.num[e]
                if c == 0:
                    continue
                ex = e - k
                if ex == 0:
                    mono = str(abs(c))
                else:
                    head = "" if abs(c) == 1 else f"{abs(c)}*"
                    mono = f"{head}q" if ex == 1 else f"{head}q^{ex}"
                if not parts:
                    parts.append(mono if c > 0 else "-" + mono)
                else:
                    parts.append(("+ " if c > 0 else "- ") + mono)
            return " ".join(parts)
        ns = _pstr(self.num)
        ds = _pstr(self.den)
        if len([c for c in self.num if c]) > 1:
            ns = f"({ns})"
        if len([c for c in self.den if c]) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"QScalar({self})"


def _reduce(n, d):
    if not d:
        raise ZeroDivisionError("zero denominator in Q(q)")
    if not n:
        return (), (1,)
    g = _pgcd(n, d)
    if g != (1,):
        n = _pdivexact(n, g)
        d = _pdivexact(d, g)
    if d[-1] < 0:
        n, d = _pneg(n), _pneg(d)
    return n, d


def _coerce(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QScalar(x)
    return NotImplemented


ZERO = QScalar(0)
ONE = QScalar(1)
Q = QScalar.q_power(1)
QINV = QScalar.q_power(-1)


# ---------------------------------------------------------------------------
# named operation surface


def qs_add(a: QScalar, b: QScalar) -> QScalar:
    return a + b


def qs_mul(a: QScalar, b: QScalar) -> QScalar:
    return a * b


def qs_inv(a: QScalar) -> QScalar:
    return a.inv()


def qs_eval(a: QScalar, point) -> Fraction:
    return a.eval(point)


def q_int(m: int) -> QScalar:
    """Symmetric q-integer [m] = (q^m - q^-m)/(q - q^-1)."""
    num = QScalar.q_power(m) - QScalar.q_power(-m)
    den = Q - QINV
    return num / den


def gauss_binomial(s: int, t: int) -> QScalar:
    """Symmetric-convention Gauss polynomial [s choose t]_q."""
    if not (0 <= t <= s):
        raise ValueError(f"gauss_binomial needs 0 <= t <= s, got ({s}, {t})")
    out = ONE
    for k in range(1, t + 1):
        out = out * (QScalar.q_power(s - k + 1) - QScalar.q_power(-(s - k + 1)))
        out = out / (QScalar.q_power(k) - QScalar.q_power(-k))
    return out
