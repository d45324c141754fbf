"""R-matrix, braid operator, Cuntz embedding, and the q-antisymmetric tensor.

The vector-representation R-matrix (overall fractional power of q dropped,
since it cancels in every identity checked here) is

    R = q sum_i e_ii (x) e_ii + sum_{i != j} e_ii (x) e_jj
        + (q - q^-1) sum_{i < j} e_ij (x) e_ji,

oriented so that sigma = P R commutes with (pi (x) pi) Delta(a) for the
coproduct used in this package; the transposed orientation fails that
check and is rejected by intertwiner_check.  The algebra map eta sends
e_{i1 j1} (x) ... (x) e_{im jm} to s_{i1}..s_{im} s*_{jm}..s*_{j1} and
carries braid-group generators to elements theta_i of the Cuntz algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cuntz import CuntzElement, Word, cuntz_equal, cuntz_mul, cuntz_star
from .linalg import QMatrix, embed_legs, nullspace, rank
from .qscalar import ONE, QScalar
from .uq import E, F, K, KINV, LieData, UqGenerator, _rep_depth, act_generator, rep_vector


@dataclass(frozen=True)
class EndoMatrix:
    """Endomorphism of V^{(x) m}, V of dimension d; multi-indices flatten
    big-endian (first tensor leg most significant)."""

    d: int
    m: int
    mat: QMatrix

    def __post_init__(self):
        size = self.d**self.m
        if self.mat.nrows != size or self.mat.ncols != size:
            raise ValueError("matrix size inconsistent with tensor arity")

    def __matmul__(self, other: "EndoMatrix") -> "EndoMatrix":
        assert self.d == other.d and self.m == other.m
        return EndoMatrix(self.d, self.m, self.mat @ other.mat)

    def on_legs(self, total: int, legs: tuple[int, ...]) -> "EndoMatrix":
        return EndoMatrix(self.d, total, embed_legs(self.mat, self.d, total, legs))


def _flat(idx: tuple[int, ...], d: int) -> int:
    n = 0
    for i in idx:
        n = n * d + (i - 1)
    return n


def _unflat(n: int, d: int, m: int) -> tuple[int, ...]:
    out = [0] * m
    for pos in range(m - 1, -1, -1):
        out[pos] = n % d + 1
        n //= d
    return tuple(out)


def rmatrix(d: int) -> EndoMatrix:
    """The representation R-matrix on V (x) V."""
    if d < 2:
        raise ValueError("need d >= 2")
    qq = QScalar.q_power(1)
    hecke = qq - QScalar.q_power(-1)
    mat = QMatrix(d * d, d * d)
    for i, j in product(range(1, d + 1), repeat=2):
        mat.set(_flat((i, j), d), _flat((i, j), d), qq if i == j else ONE)
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            # e_ij (x) e_ji : row (i, j), column (j, i)
            mat.set(_flat((i, j), d), _flat((j, i), d), hecke)
    return EndoMatrix(d, 2, mat)


def flip(d: int) -> EndoMatrix:
    mat = QMatrix(d * d, d * d)
    for i, j in product(range(1, d + 1), repeat=2):
        mat.set(_flat((j, i), d), _flat((i, j), d), ONE)
    return EndoMatrix(d, 2, mat)


def sigma(d: int) -> EndoMatrix:
    """The braid operator P R on V (x) V."""
    return flip(d) @ rmatrix(d)


def ybe_check(d: int, r: EndoMatrix | None = None) -> bool:
    """Quantum Yang-Baxter equation R12 R13 R23 = R23 R13 R12 on V^(x)3."""
    r = rmatrix(d) if r is None else r
    r12 = r.on_legs(3, (0, 1))
    r13 = r.on_legs(3, (0, 2))
    r23 = r.on_legs(3, (1, 2))
    return (r12 @ r13 @ r23).mat == (r23 @ r13 @ r12).mat


def intertwiner_check(d: int) -> bool:
    """sigma commutes with (pi (x) pi) Delta(gen) for every generator."""
    g = LieData(d)
    s = sigma(d).mat
    for gen in g.generators():
        m = _rep_depth(g, gen, 2)
        if (s @ m) != (m @ s):
            return False
    return True


def hecke_check(d: int) -> bool:
    """Minimal polynomial of sigma is exactly (x - q)(x + q^-1)."""
    s = sigma(d)
    n = s.mat.nrows
    ident = QMatrix.identity(n)
    a = s.mat - ident.scaled(QScalar.q_power(1))
    b = s.mat + ident.scaled(QScalar.q_power(-1))
    return (not a.is_zero()) and (not b.is_zero()) and (a @ b).is_zero()


def sigma_eigenvalue_multiplicities(d: int) -> dict[str, int]:
    """Multiplicities of q and -q^-1 (valid because sigma is annihilated by
    the degree-2 Hecke polynomial)."""
    s = sigma(d)
    n = s.mat.nrows
    ident = QMatrix.identity(n)
    rk_q = rank(s.mat - ident.scaled(QScalar.q_power(1)))
    return {"q": n - rk_q, "-q^-1": rk_q}


def eta(m: int, t: EndoMatrix) -> CuntzElement:
    """Embed End(V^(x)m) into the Cuntz algebra:
    e_{I,J} -> s_{i1}..s_{im} s*_{jm}..s*_{j1}."""
    if t.m != m:
        raise ValueError(f"arity mismatch: matrix has {t.m}, requested {m}")
    d = t.d
    terms: dict[Word, QScalar] = {}
    for (r, c), v in t.mat.entries.items():
        mu = _unflat(r, d, m)
        nu = _unflat(c, d, m)
        terms[Word(mu, nu)] = v
    return CuntzElement(d, terms)


@dataclass(frozen=True)
class BraidElement:
    """The image theta_i = eta(b_i) of a braid generator."""

    i: int
    element: CuntzElement


def theta(d: int, i: int = 1) -> BraidElement:
    """theta_1 = eta(sigma); theta_i conjugates it by length-(i-1) words:
    theta_i = sum_l s_{l_1}..s_{l_{i-1}} theta_1 s*_{l_{i-1}}..s*_{l_1}."""
    if i < 1:
        raise ValueError("strand index is 1-based")
    base = eta(2, sigma(d))
    if i == 1:
        return BraidElement(1, base)
    acc = CuntzElement.zero(d)
    for prefix in product(range(1, d + 1), repeat=i - 1):
        left = CuntzElement.word(d, prefix, ())
        acc = acc + cuntz_mul(cuntz_mul(left, base), cuntz_star(left))
    return BraidElement(i, acc)


def q_antisymmetric(d: int) -> CuntzElement:
    """The rank-d q-antisymmetric tensor: the unique (up to scale) element of
    the degree-(d, 0) word span killed by every e_i and f_i and fixed by
    every k_i; normalized so the coefficient of s_1 s_2 .. s_d is 1.

    Found by exact linear algebra so the sign conventions can never drift
    from the action conventions.
    """
    g = LieData(d)
    # k_i-fixedness forces letter content: each letter 1..d exactly once.
    words = [w for w in product(range(1, d + 1), repeat=d) if len(set(w)) == d]
    index = {w: a for a, w in enumerate(words)}
    rows: dict[tuple, dict] = {}
    nrow = 0
    mat_entries = {}
    for kind in (E, F):
        for i in range(1, d):
            gen = UqGenerator(kind, i)
            row_of_image: dict[Word, int] = {}
            for a, w in enumerate(words):
                img = act_generator(g, gen, CuntzElement.word(d, w, ()))
                for iw, c in img.terms.items():
                    if iw not in row_of_image:
                        row_of_image[iw] = nrow
                        nrow += 1
                    mat_entries[(row_of_image[iw], a)] = (
                        mat_entries.get((row_of_image[iw], a), QScalar(0)) + c
                    )
    mat = QMatrix(nrow, len(words), mat_entries)
    basis = nullspace(mat)
    if len(basis) != 1:
        raise ArithmeticError(
            f"q-antisymmetric solution space has dimension {len(basis)}, expected 1"
        )
    vec = basis[0]
    lead = vec.get(index[tuple(range(1, d + 1))])
    if not lead:
        raise ArithmeticError("solution lacks the identity-permutation word")
    inv = lead.inv()
    terms = {Word(words[a], ()): c * inv for a, c in vec.items()}
    out = CuntzElement(d)
    out.terms = {w: c for w, c in terms.items() if c}
    return out
