"""Independent verification oracle: a concrete isometry representation.

The d-adic digit coding realizes the defining relations on basis vectors
e_0, e_1, ...: s_i sends e_n to e_{dn+i-1}, and s_i* inverts that shift on
its range and annihilates the rest.  Evaluating coefficients at exact
rational points q0 turns any symbolic element into an operator on finitely
many basis vectors, giving a one-sided zero test: a symbolic zero always
maps to the zero operator, and a nonzero element is caught at a random
evaluation point with overwhelming probability (the representation is
faithful, so only coefficient vanishing at the sampled points can hide it).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cuntz import CuntzElement, Word, cuntz_level


DEFAULT_Q_POINTS = (
    Fraction(3, 2),
    Fraction(5, 3),
    Fraction(2),
    Fraction(7, 3),
    Fraction(5, 2),
)


class BasisOverflow(Exception):
    """An image index fell outside the configured basis range; enlarge N."""


@dataclass(frozen=True)
class OracleConfig:
    d: int
    basis_bound: int
    q_points: tuple[Fraction, ...] = DEFAULT_Q_POINTS

    def __post_init__(self):
        if self.basis_bound < self.d:
            raise ValueError("basis bound must be at least d")
        if not self.q_points:
            raise ValueError("need at least one evaluation point")
        for p in self.q_points:
            if p in (0, 1, -1):
                raise ValueError("evaluation points must avoid 0 and +-1")


def rep_word(cfg: OracleConfig, w: Word, n: int) -> int | None:
    """Image basis index of e_n under the word, or None if annihilated.

    Words act with coefficient 1 on basis vectors; an image index at or
    beyond the basis bound raises BasisOverflow rather than truncating.
    """
    if n >= cfg.basis_bound:
        raise BasisOverflow(f"input index {n} outside basis bound {cfg.basis_bound}")
    d = cfg.d
    # rightmost factor acts first: the star block in tuple order, then mu
    for j in w.nu:
        if n % d == j - 1:
            n = n // d
        else:
            return None
    for i in reversed(w.mu):
        n = d * n + (i - 1)
    if n >= cfg.basis_bound:
        raise BasisOverflow(f"image index {n} outside basis bound {cfg.basis_bound}")
    return n


def apply_element(
    cfg: OracleConfig, x: CuntzElement, q0: Fraction, n: int
) -> dict[int, Fraction]:
    """Exact image of e_n under x with coefficients evaluated at q = q0."""
    out: dict[int, Fraction] = {}
    for w, c in x.terms.items():
        m = rep_word(cfg, w, n)
        if m is None:
            continue
        v = c.eval(q0)
        if not v:
            continue
        s = out.get(m)
        s = v if s is None else s + v
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def oracle_is_zero(cfg: OracleConfig, x: CuntzElement) -> bool:
    """Evaluate x on e_0 .. e_{d^{m+1}-1} at every configured point, m the
    maximal co-length after leveling; true iff every image vanishes.

    Symbolic zero implies true; true implies symbolic zero only with
    randomized confidence.
    """
    if x.d != cfg.d:
        raise ValueError("generator count mismatch")
    if not x.terms:
        return True
    m = x.max_colength()
    leveled_parts = []
    for deg in x.degrees():
        comp = CuntzElement(x.d, x.component(deg))
        leveled_parts.append(cuntz_level(comp, m))
    sweep = cfg.d ** (m + 1)
    if cfg.basis_bound < sweep:
        raise ValueError(
            f"basis bound {cfg.basis_bound} below required sweep {sweep}"
        )
    for q0 in cfg.q_points:
        for n in range(sweep):
            acc: dict[int, Fraction] = {}
            for part in leveled_parts:
                for idx, v in apply_element(cfg, part, q0, n).items():
                    s = acc.get(idx)
                    s = v if s is None else s + v
                    if s:
                        acc[idx] = s
                    else:
                        acc.pop(idx, None)
            if acc:
                return False
    return True


def config_for(x: CuntzElement, q_points: tuple[Fraction, ...] = DEFAULT_Q_POINTS) -> OracleConfig:
    """A basis bound large enough to sweep x without overflow."""
    m = x.max_colength()
    dmax = max((w.degree for w in x.terms), default=0)
    bound = x.d ** (m + 1 + max(dmax, 0))
    return OracleConfig(x.d, max(bound, x.d), q_points)
