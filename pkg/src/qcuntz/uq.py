"""The Jimbo presentation of U_q(sl_n) and its action on the Cuntz algebra.

Generators e_i, f_i, k_i^{+-1} act through the d-dimensional vector
representation (d = n): pi(e_i) = E_{i,i+1}, pi(f_i) = E_{i+1,i}, pi(k_i)
diagonal with q at slot i and q^-1 at slot i+1.  The action on the algebra
is the twisted Leibniz rule driven by the coproduct

    Delta(e_i) = e_i (x) k_i + 1 (x) e_i,
    Delta(f_i) = f_i (x) 1 + k_i^-1 (x) f_i,
    Delta(k_i^{+-1}) = k_i^{+-1} (x) k_i^{+-1},

with base cases a.1 = eps(a), a.s_i = sum_j pi(a)_{ji} s_j and
a.s_i* = sum_j pi(gamma(a))_{ij} s_j*, gamma the antipode.

Elements of U_q are handled as plain generator words: every check needed
here reduces to generator actions plus the left-module law, so no normal
form for U_q itself is computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cuntz import CuntzElement, Word, cuntz_equal
from .linalg import QMatrix
from .qscalar import ONE, QScalar, ZERO, gauss_binomial

E, F, K, KINV = "e", "f", "k", "k^-1"
_KINDS = (E, F, K, KINV)


@dataclass(frozen=True)
class LieData:
    """sl_n root data: rank r = n - 1, Cartan matrix 2/-1/0."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("sl_n needs n >= 2")

    @property
    def rank(self) -> int:
        return self.n - 1

    @property
    def d(self) -> int:
        return self.n

    def cartan(self, i: int, j: int) -> int:
        if i == j:
            return 2
        if abs(i - j) == 1:
            return -1
        return 0

    def generators(self) -> list["UqGenerator"]:
        return [
            UqGenerator(kind, i)
            for i in range(1, self.rank + 1)
            for kind in _KINDS
        ]


@dataclass(frozen=True)
class UqGenerator:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("generator index is 1-based")

    def __str__(self):
        if self.kind == KINV:
            return f"k{self.index}^-1"
        return f"{self.kind}{self.index}"


UqWord = tuple[UqGenerator, ...]


def uq_word(*gens: UqGenerator) -> UqWord:
    return tuple(gens)


# ---------------------------------------------------------------------------
# vector representation


def rep_vector(g: LieData, gen: UqGenerator) -> QMatrix:
    """pi(gen) as a d x d matrix over Q(q); 0-based matrix indices."""
    d = g.d
    i = gen.index
    if i > g.rank:
        raise ValueError(f"index {i} exceeds rank {g.rank}")
    m = QMatrix(d, d)
    if gen.kind == E:
        m.set(i - 1, i, ONE)
    elif gen.kind == F:
        m.set(i, i - 1, ONE)
    else:
        exp = 1 if gen.kind == K else -1
        for a in range(d):
            if a == i - 1:
                m.set(a, a, QScalar.q_power(exp))
            elif a == i:
                m.set(a, a, QScalar.q_power(-exp))
            else:
                m.set(a, a, ONE)
    return m


def counit(gen: UqGenerator) -> QScalar:
    return ZERO if gen.kind in (E, F) else ONE


def antipode_rep(g: LieData, gen: UqGenerator) -> QMatrix:
    """pi(gamma(gen)): gamma(e_i) = -e_i k_i^-1, gamma(f_i) = -k_i f_i,
    gamma(k_i^{+-1}) = k_i^{-+1}."""
    if gen.kind == E:
        m = rep_vector(g, gen) @ rep_vector(g, UqGenerator(KINV, gen.index))
        return m.scaled(-ONE)
    if gen.kind == F:
        m = rep_vector(g, UqGenerator(K, gen.index)) @ rep_vector(g, gen)
        return m.scaled(-ONE)
    flip = KINV if gen.kind == K else K
    return rep_vector(g, UqGenerator(flip, gen.index))


def coproduct_apply(gen: UqGenerator) -> list[tuple[UqGenerator | None, UqGenerator | None]]:
    """Delta(gen) as (left, right) pairs; None stands for the unit."""
    if gen.kind == E:
        return [(gen, UqGenerator(K, gen.index)), (None, gen)]
    if gen.kind == F:
        return [(gen, None), (UqGenerator(KINV, gen.index), gen)]
    return [(gen, gen)]


# ---------------------------------------------------------------------------
# relation checks


def _rep_depth(g: LieData, gen: UqGenerator, depth: int) -> QMatrix:
    if depth == 1:
        return rep_vector(g, gen)
    # (pi (x) pi) Delta(gen)
    d = g.d
    total = QMatrix(d * d, d * d)
    for left, right in coproduct_apply(gen):
        lm = QMatrix.identity(d) if left is None else rep_vector(g, left)
        rm = QMatrix.identity(d) if right is None else rep_vector(g, right)
        total = total + lm.kron(rm)
    return total


def rep_relations_check(g: LieData, depth: int = 1) -> list[tuple[str, bool]]:
    """Verify the Jimbo relations as exact matrix identities.

    depth 1 checks them under pi, depth 2 under (pi (x) pi) Delta.  Returns
    (relation label, holds) pairs.
    """
    if depth not in (1, 2):
        raise ValueError("depth must be 1 or 2")
    r = g.rank
    dim = g.d if depth == 1 else g.d * g.d
    ident = QMatrix.identity(dim)
    ke = {i: _rep_depth(g, UqGenerator(K, i), depth) for i in range(1, r + 1)}
    kinv = {i: _rep_depth(g, UqGenerator(KINV, i), depth) for i in range(1, r + 1)}
    ee = {i: _rep_depth(g, UqGenerator(E, i), depth) for i in range(1, r + 1)}
    ff = {i: _rep_depth(g, UqGenerator(F, i), depth) for i in range(1, r + 1)}
    out: list[tuple[str, bool]] = []

    for i in range(1, r + 1):
        out.append((f"k{i} k{i}^-1 = 1", (ke[i] @ kinv[i]) == ident))
        for j in range(1, r + 1):
            out.append((f"k{i} k{j} = k{j} k{i}", (ke[i] @ ke[j]) == (ke[j] @ ke[i])))
            aij = g.cartan(i, j)
            lhs = ke[i] @ ee[j] @ kinv[i]
            out.append(
                (f"k{i} e{j} k{i}^-1 = q^{aij} e{j}", lhs == ee[j].scaled(QScalar.q_power(aij)))
            )
            lhs = ke[i] @ ff[j] @ kinv[i]
            out.append(
                (f"k{i} f{j} k{i}^-1 = q^{-aij} f{j}", lhs == ff[j].scaled(QScalar.q_power(-aij)))
            )
            comm = (ee[i] @ ff[j]) - (ff[j] @ ee[i])
            if i == j:
                target = (ke[i] - kinv[i]).scaled(
                    (QScalar.q_power(1) - QScalar.q_power(-1)).inv()
                )
            else:
                target = QMatrix(dim, dim)
            out.append((f"[e{i}, f{j}] relation", comm == target))
            if i != j:
                out.append((f"Serre e ({i},{j})", _serre(ee, i, j, g).is_zero()))
                out.append((f"Serre f ({i},{j})", _serre(ff, i, j, g).is_zero()))
    return out


def _serre(img: dict[int, QMatrix], i: int, j: int, g: LieData) -> QMatrix:
    n = 1 - g.cartan(i, j)
    dim = next(iter(img.values())).nrows
    acc = QMatrix(dim, dim)
    for t in range(n + 1):
        coeff = gauss_binomial(n, t)
        if t % 2:
            coeff = -coeff
        term = QMatrix.identity(dim)
        for _ in range(t):
            term = term @ img[i]
        term = term @ img[j]
        for _ in range(n - t):
            term = term @ img[i]
        acc = acc + term.scaled(coeff)
    return acc


# ---------------------------------------------------------------------------
# the action on the Cuntz algebra


_S, _SSTAR = 0, 1


@lru_cache(maxsize=None)
def _act_tables(n: int):
    """Per-generator single-factor action tables for sl_n.

    tables[gen][(kind, i)] = list of ((kind, j), coeff): the image of the
    factor s_i (kind _S) or s_i* (kind _SSTAR) under the generator.
    """
    g = LieData(n)
    tables = {}
    for gen in g.generators():
        pi = rep_vector(g, gen)
        pig = antipode_rep(g, gen)
        table: dict[tuple[int, int], list] = {}
        for i in range(1, n + 1):
            # a . s_i = sum_j pi(a)_{ji} s_j   (column i)
            table[(_S, i)] = [
                ((_S, row + 1), v)
                for (row, col), v in pi.entries.items()
                if col == i - 1
            ]
            # a . s_i* = sum_j pi(gamma(a))_{ij} s_j*   (row i)
            table[(_SSTAR, i)] = [
                ((_SSTAR, col + 1), v)
                for (row, col), v in pig.entries.items()
                if row == i - 1
            ]
        tables[(gen.kind, gen.index)] = table
    return tables


def _word_factors(w: Word) -> tuple:
    return tuple((_S, i) for i in w.mu) + tuple((_SSTAR, j) for j in reversed(w.nu))


def _factors_word(factors: Sequence[tuple[int, int]]) -> Word:
    mu = tuple(i for kind, i in factors if kind == _S)
    nu = tuple(j for kind, j in reversed(factors) if kind == _SSTAR)
    return Word(mu, nu)


def _act_factors(g: LieData, gen: UqGenerator, factors: tuple) -> dict[tuple, QScalar]:
    """Recursive twisted-Leibniz action on a factor sequence.

    Returns a map factor-sequence -> coefficient.  Normality is preserved:
    single-factor images stay in the span of same-type factors, so results
    concatenate without contraction.
    """
    if not factors:
        eps = counit(gen)
        return {(): eps} if eps else {}
    tables = _act_tables(g.n)
    table = tables[(gen.kind, gen.index)]
    head, tail = factors[0], factors[1:]
    out: dict[tuple, QScalar] = {}

    def emit(seq, coeff):
        if not coeff:
            return
        s = out.get(seq)
        s = coeff if s is None else s + coeff
        if s:
            out[seq] = s
        else:
            out.pop(seq, None)

    if gen.kind in (K, KINV):
        # Delta(k) = k (x) k
        for (hf, hc) in table[head]:
            for tseq, tc in _act_factors(g, gen, tail).items():
                emit((hf,) + tseq, hc * tc)
        return out
    if gen.kind == E:
        # e (x) k + 1 (x) e
        kgen = UqGenerator(K, gen.index)
        for (hf, hc) in table[head]:
            for tseq, tc in _act_factors(g, kgen, tail).items():
                emit((hf,) + tseq, hc * tc)
        for tseq, tc in _act_factors(g, gen, tail).items():
            emit((head,) + tseq, tc)
        return out
    # f (x) 1 + k^-1 (x) f
    for (hf, hc) in table[head]:
        emit((hf,) + tail, hc)
    kh = tables[(KINV, gen.index)][head]
    for (hf, hc) in kh:
        for tseq, tc in _act_factors(g, gen, tail).items():
            emit((hf,) + tseq, hc * tc)
    return out


def act_generator(g: LieData, gen: UqGenerator, x: CuntzElement) -> CuntzElement:
    """Action of a single generator, extended linearly over terms."""
    if x.d != g.d:
        raise ValueError(f"element lives in O_{x.d} but the algebra acts on O_{g.d}")
    acc: dict[Word, QScalar] = {}
    for w, c in x.terms.items():
        for seq, coeff in _act_factors(g, gen, _word_factors(w)).items():
            nw = _factors_word(seq)
            v = c * coeff
            s = acc.get(nw)
            s = v if s is None else s + v
            if s:
                acc[nw] = s
            else:
                acc.pop(nw, None)
    r = CuntzElement(x.d)
    r.terms = acc
    return r


def act_word(g: LieData, word: UqWord, x: CuntzElement) -> CuntzElement:
    """Left-module action of a generator word: rightmost factor acts first."""
    for gen in reversed(word):
        x = act_generator(g, gen, x)
    return x


def is_fixed(g: LieData, x: CuntzElement) -> bool:
    """Whether a . x = eps(a) x for every algebra element a.

    Checking generators suffices: eps is an algebra map and the action is a
    left module action, so fixedness under generators propagates to words.
    """
    for gen in g.generators():
        lhs = act_generator(g, gen, x)
        rhs = x.scaled(counit(gen))
        if not cuntz_equal(lhs, rhs):
            return False
    return True
