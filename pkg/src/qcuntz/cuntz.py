"""The polynomial Cuntz algebra on d isometries, over Q(q).

Basis monomials are normal words s_{mu_1}..s_{mu_r} s*_{nu_t}..s*_{nu_1};
the defining relations s_i* s_j = delta_ij and sum_j s_j s_j* = 1 make any
product of generators a combination of such words.  Equality is decided by
leveling: within each degree D = |mu| - |nu|, rewriting every word to a
common co-length via s_mu s_nu* = sum_j s_{mu j} s_{nu j}* produces
coefficients on a linearly independent family, so two elements are equal
iff their leveled coefficient maps agree.  The stored representative is
the compacted (minimal) form, obtained by undoing complete leveling
families.
"""

from __future__ import annotations

import json
from typing import Iterable, NamedTuple

from .qscalar import ONE, QScalar, ZERO


class Word(NamedTuple):
    """The monomial s_{mu_1}..s_{mu_r} s*_{nu_t}..s*_{nu_1}.

    Note the star block is written in reversed tuple order, so the
    involution just swaps mu and nu.
    """

    mu: tuple[int, ...]
    nu: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.mu) - len(self.nu)

    def star(self) -> "Word":
        return Word(self.nu, self.mu)

    def __str__(self):
        parts = [f"s{i}" for i in self.mu]
        parts += [f"s{j}*" for j in reversed(self.nu)]
        return " ".join(parts) if parts else "1"


UNIT_WORD = Word((), ())


def _mul_words(x: Word, y: Word) -> Word | None:
    """Normal-form product of two words, or None when a contraction kills it."""
    t, r = len(x.nu), len(y.mu)
    k = min(t, r)
    if x.nu[:k] != y.mu[:k]:
        return None
    if t <= r:
        return Word(x.mu + y.mu[t:], y.nu)
    return Word(x.mu, y.nu + x.nu[r:])


class CuntzElement:
    """Finite Q(q)-linear combination of normal words, zero coefficients dropped."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: dict[Word, QScalar] | None = None):
        if d < 1:
            raise ValueError("need at least one generator")
        self.d = d
        self.terms: dict[Word, QScalar] = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self._check_word(w)
                    self.terms[w] = c

    def _check_word(self, w: Word) -> None:
        for i in w.mu + w.nu:
            if not 1 <= i <= self.d:
                raise ValueError(f"generator index {i} outside 1..{self.d}")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def unit(d: int, coeff: QScalar = ONE) -> "CuntzElement":
        return CuntzElement(d, {UNIT_WORD: coeff})

    @staticmethod
    def zero(d: int) -> "CuntzElement":
        return CuntzElement(d)

    @staticmethod
    def gen(d: int, i: int) -> "CuntzElement":
        return CuntzElement(d, {Word((i,), ()): ONE})

    @staticmethod
    def gen_star(d: int, i: int) -> "CuntzElement":
        return CuntzElement(d, {Word((), (i,)): ONE})

    @staticmethod
    def word(d: int, mu: Iterable[int], nu: Iterable[int], coeff: QScalar = ONE) -> "CuntzElement":
        return CuntzElement(d, {Word(tuple(mu), tuple(nu)): coeff})

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "CuntzElement") -> "CuntzElement":
        self._same_d(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        r = CuntzElement(self.d)
        r.terms = out
        return r

    def __neg__(self) -> "CuntzElement":
        r = CuntzElement(self.d)
        r.terms = {w: -c for w, c in self.terms.items()}
        return r

    def __sub__(self, other: "CuntzElement") -> "CuntzElement":
        return self + (-other)

    def scaled(self, c: QScalar) -> "CuntzElement":
        r = CuntzElement(self.d)
        if c:
            r.terms = {w: c * v for w, v in self.terms.items()}
        return r

    def __mul__(self, other: "CuntzElement") -> "CuntzElement":
        return cuntz_mul(self, other)

    def _same_d(self, other: "CuntzElement") -> None:
        if self.d != other.d:
            raise ValueError(f"mixed generator counts: {self.d} vs {other.d}")

    # -- queries ----------------------------------------------------------

    def degrees(self) -> set[int]:
        return {w.degree for w in self.terms}

    def component(self, deg: int) -> dict[Word, QScalar]:
        return {w: c for w, c in self.terms.items() if w.degree == deg}

    def max_colength(self) -> int:
        return max((len(w.nu) for w in self.terms), default=0)

    def is_symbolically_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, CuntzElement):
            return NotImplemented
        return cuntz_equal(self, other)

    def __hash__(self):
        raise TypeError("CuntzElement is unhashable; equality is semantic")

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (w.degree, w.mu, w.nu)):
            c = self.terms[w]
            cs = _coeff_str(c)
            if w == UNIT_WORD:
                parts.append(cs if cs != "1" else "1")
            elif cs == "1":
                parts.append(str(w))
            elif cs == "-1":
                parts.append(f"-{w}")
            else:
                parts.append(f"{cs} {w}")
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:].lstrip()
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return f"CuntzElement(d={self.d}, {self})"


def _coeff_str(c: QScalar) -> str:
    s = str(c)
    if "+" in s or " - " in s:
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# operations


def cuntz_mul(x: CuntzElement, y: CuntzElement) -> CuntzElement:
    """Product in the Cuntz algebra; interior s*_i s_j pairs contract to delta_ij."""
    x._same_d(y)
    out: dict[Word, QScalar] = {}
    for wx, cx in x.terms.items():
        for wy, cy in y.terms.items():
            w = _mul_words(wx, wy)
            if w is None:
                continue
            c = cx * cy
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    r = CuntzElement(x.d)
    r.terms = out
    return r


def cuntz_star(x: CuntzElement) -> CuntzElement:
    """The involution; q is treated as a real parameter, so coefficients are kept."""
    r = CuntzElement(x.d)
    r.terms = {w.star(): c for w, c in x.terms.items()}
    return r


def _level_word(d: int, w: Word, m: int) -> Iterable[Word]:
    """All words obtained by padding w with common suffixes up to co-length m."""
    k = m - len(w.nu)
    if k == 0:
        yield w
        return
    suffix = [1] * k
    while True:
        ext = tuple(suffix)
        yield Word(w.mu + ext, w.nu + ext)
        pos = k - 1
        while pos >= 0 and suffix[pos] == d:
            suffix[pos] = 1
            pos -= 1
        if pos < 0:
            return
        suffix[pos] += 1


def cuntz_level(x: CuntzElement, m: int) -> CuntzElement:
    """Rewrite every term to co-length m using sum_j s_j s_j* = 1."""
    if m < x.max_colength():
        raise ValueError(f"target co-length {m} below current maximum {x.max_colength()}")
    out: dict[Word, QScalar] = {}
    for w, c in x.terms.items():
        for lw in _level_word(x.d, w, m):
            s = out.get(lw)
            out[lw] = c if s is None else s + c
    r = CuntzElement(x.d)
    r.terms = {w: c for w, c in out.items() if c}
    return r


def cuntz_is_zero(x: CuntzElement) -> bool:
    """Decide x = 0 in the algebra by leveling each degree component."""
    degs = x.degrees()
    for deg in degs:
        comp = x.component(deg)
        m = max(len(w.nu) for w in comp)
        acc: dict[Word, QScalar] = {}
        for w, c in comp.items():
            for lw in _level_word(x.d, w, m):
                s = acc.get(lw)
                s = c if s is None else s + c
                if s:
                    acc[lw] = s
                else:
                    acc.pop(lw, None)
        if acc:
            return False
    return True


def cuntz_equal(x: CuntzElement, y: CuntzElement) -> bool:
    x._same_d(y)
    return cuntz_is_zero(x - y)


def cuntz_compact(x: CuntzElement, family_order=None) -> CuntzElement:
    """Collapse complete equal-coefficient families {(mu j, nu j) : j = 1..d}
    back to (mu, nu) until none remain.

    ``family_order`` optionally reorders the candidate scan within each pass;
    the fixed point does not depend on it (exercised in tests).
    """
    d = x.d
    terms = dict(x.terms)
    changed = True
    while changed:
        changed = False
        parents: dict[Word, int] = {}
        for w in terms:
            if w.mu and w.nu and w.mu[-1] == w.nu[-1]:
                p = Word(w.mu[:-1], w.nu[:-1])
                parents[p] = parents.get(p, 0) + 1
        candidates = [p for p, n in parents.items() if n == d]
        if family_order is not None:
            candidates = family_order(candidates)
        for p in candidates:
            children = [Word(p.mu + (j,), p.nu + (j,)) for j in range(1, d + 1)]
            if not all(ch in terms for ch in children):
                continue
            c = terms[children[0]]
            if any(terms[ch] != c for ch in children[1:]):
                continue
            for ch in children:
                del terms[ch]
            s = terms.get(p)
            s = c if s is None else s + c
            if s:
                terms[p] = s
            else:
                terms.pop(p, None)
            changed = True
    r = CuntzElement(x.d)
    r.terms = terms
    return r


# ---------------------------------------------------------------------------
# JSON serialization: {"d": int, "terms": [{"mu": [...], "nu": [...], "coeff": str}]}


def to_json_dict(x: CuntzElement) -> dict:
    items = sorted(x.terms.items(), key=lambda kv: (kv[0].degree, kv[0].mu, kv[0].nu))
    return {
        "d": x.d,
        "terms": [
            {"mu": list(w.mu), "nu": list(w.nu), "coeff": str(c)} for w, c in items
        ],
    }


def to_json(x: CuntzElement) -> str:
    return json.dumps(to_json_dict(x))


def from_json_dict(data: dict) -> CuntzElement:
    from .parse import parse_scalar

    d = int(data["d"])
    terms: dict[Word, QScalar] = {}
    for t in data["terms"]:
        w = Word(tuple(int(i) for i in t["mu"]), tuple(int(j) for j in t["nu"]))
        c = parse_scalar(t["coeff"])
        if c:
            terms[w] = terms.get(w, ZERO) + c
    return CuntzElement(d, terms)


def from_json(text: str) -> CuntzElement:
    return from_json_dict(json.loads(text))
