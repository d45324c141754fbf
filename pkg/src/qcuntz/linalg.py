"""Sparse exact matrices over Q(q): products, tensor legs, kernels.

Everything here is a plain dict {(row, col): QScalar} with zeros never
stored, which keeps the d^m x d^m tensor-power operators cheap (the
R-matrices are very sparse).  Gaussian elimination is exact field
arithmetic in Q(q); there is no pivot-growth concern at desk scale.
"""

from __future__ import annotations

from .qscalar import ONE, QScalar, ZERO


class QMatrix:
    """Sparse matrix over Q(q)."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                if v:
                    self.entries[(i, j)] = v

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix(n, n, {(i, i): ONE for i in range(n)})

    def __getitem__(self, ij):
        return self.entries.get(ij, ZERO)

    def set(self, i: int, j: int, v: QScalar) -> None:
        if v:
            self.entries[(i, j)] = v
        else:
            self.entries.pop((i, j), None)

    def copy(self) -> "QMatrix":
        m = QMatrix(self.nrows, self.ncols)
        m.entries = dict(self.entries)
        return m

    def __add__(self, other: "QMatrix") -> "QMatrix":
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        m = QMatrix(self.nrows, self.ncols)
        m.entries = out
        return m

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + other.scaled(-ONE)

    def scaled(self, c: QScalar) -> "QMatrix":
        m = QMatrix(self.nrows, self.ncols)
        if c:
            m.entries = {k: c * v for k, v in self.entries.items()}
        return m

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        assert self.ncols == other.nrows
        rows_of_other: dict[int, list] = {}
        for (i, j), v in other.entries.items():
            rows_of_other.setdefault(i, []).append((j, v))
        acc: dict[tuple, QScalar] = {}
        for (i, k), a in self.entries.items():
            row = rows_of_other.get(k)
            if not row:
                continue
            for j, b in row:
                key = (i, j)
                s = acc.get(key)
                p = a * b
                acc[key] = p if s is None else s + p
        m = QMatrix(self.nrows, other.ncols)
        m.entries = {k: v for k, v in acc.items() if v}
        return m

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "QMatrix":
        m = QMatrix(self.ncols, self.nrows)
        m.entries = {(j, i): v for (i, j), v in self.entries.items()}
        return m

    def kron(self, other: "QMatrix") -> "QMatrix":
        """Kronecker product; row index (i, i') flattens to i*other.nrows + i'."""
        m = QMatrix(self.nrows * other.nrows, self.ncols * other.ncols)
        for (i, j), a in self.entries.items():
            for (k, l), b in other.entries.items():
                m.entries[(i * other.nrows + k, j * other.ncols + l)] = a * b
        return m

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols}, {len(self.entries)} entries)"


def embed_legs(mat: QMatrix, d: int, total: int, legs: tuple[int, ...]) -> QMatrix:
    """Place an operator on V^{legs} inside End(V^{total}), identity elsewhere.

    ``mat`` acts on len(legs) tensor factors of dimension d; legs are
    0-based positions, leg order = index-group order of ``mat``.
    """
    k = len(legs)
    assert mat.nrows == d**k and mat.ncols == d**k
    rest = [p for p in range(total) if p not in legs]
    out = QMatrix(d**total, d**total)
    # enumerate mat entries once, then sweep the identity legs
    rest_count = d ** len(rest)
    for (r, c), v in mat.entries.items():
        rdig = _digits(r, d, k)
        cdig = _digits(c, d, k)
        for w in range(rest_count):
            wdig = _digits(w, d, len(rest))
            full_r = [0] * total
            full_c = [0] * total
            for pos, dig_r, dig_c in zip(legs, rdig, cdig):
                full_r[pos] = dig_r
                full_c[pos] = dig_c
            for pos, dig in zip(rest, wdig):
                full_r[pos] = dig
                full_c[pos] = dig
            out.entries[(_undigits(full_r, d), _undigits(full_c, d))] = v
    return out


def _digits(n: int, d: int, k: int) -> list[int]:
    """Big-endian base-d digits of n, width k (leg 0 most significant)."""
    out = [0] * k
    for pos in range(k - 1, -1, -1):
        out[pos] = n % d
        n //= d
    return out


def _undigits(digs, d: int) -> int:
    n = 0
    for x in digs:
        n = n * d + x
    return n


def rank(mat: QMatrix) -> int:
    rows = _row_list(mat)
    return len(_eliminate(rows)[0])


def nullspace(mat: QMatrix) -> list[dict[int, QScalar]]:
    """Basis of the right kernel, each vector a sparse dict col -> QScalar."""
    rows = _row_list(mat)
    pivots, reduced = _eliminate(rows, reduce_up=True)
    pivot_cols = set(pivots)
    free_cols = [j for j in range(mat.ncols) if j not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = {f: ONE}
        for pcol, row in zip(pivots, reduced):
            c = row.get(f)
            if c:
                vec[pcol] = -c
        basis.append(vec)
    return basis


def solve_unique(mat: QMatrix, rhs: dict[int, QScalar]) -> dict[int, QScalar]:
    """Solve mat @ x = rhs; raises if inconsistent or underdetermined."""
    rows = _row_list(mat, rhs_col=mat.ncols, rhs=rhs)
    pivots, reduced = _eliminate(rows, reduce_up=True, ncols=mat.ncols + 1)
    sol: dict[int, QScalar] = {}
    for pcol, row in zip(pivots, reduced):
        if pcol == mat.ncols:
            raise ArithmeticError("inconsistent linear system")
        v = row.get(mat.ncols)
        if v:
            sol[pcol] = v
    if len([p for p in pivots if p != mat.ncols]) < mat.ncols:
        raise ArithmeticError("underdetermined linear system")
    return sol


def inverse(mat: QMatrix) -> QMatrix:
    """Exact inverse of a square matrix; raises on singular input."""
    assert mat.nrows == mat.ncols
    n = mat.nrows
    rows: dict[int, dict[int, QScalar]] = {i: {} for i in range(n)}
    for (i, j), v in mat.entries.items():
        rows[i][j] = v
    for i in range(n):
        rows[i][n + i] = ONE
    pivots, reduced = _eliminate(list(rows.values()), reduce_up=True, ncols=2 * n)
    out = QMatrix(n, n)
    for pcol, row in zip(pivots, reduced):
        if pcol >= n:
            raise ArithmeticError("singular matrix")
        for j, v in row.items():
            if j >= n:
                out.entries[(pcol, j - n)] = v
    if len(pivots) < n:
        raise ArithmeticError("singular matrix")
    return out


def _row_list(mat: QMatrix, rhs_col=None, rhs=None):
    rows: dict[int, dict[int, QScalar]] = {}
    for (i, j), v in mat.entries.items():
        rows.setdefault(i, {})[j] = v
    if rhs is not None:
        for i, v in rhs.items():
            if v:
                rows.setdefault(i, {})[rhs_col] = v
    return [r for r in rows.values() if r]


def _eliminate(rows, reduce_up=False, ncols=None):
    """Sparse Gauss-Jordan; returns (pivot columns, reduced pivot rows)."""
    pivots: list[int] = []
    reduced: list[dict[int, QScalar]] = []
    work = [dict(r) for r in rows]
    while work:
        # prefer the sparsest row with the smallest leading column
        best_i = min(
            range(len(work)),
            key=lambda i: (min(work[i]), len(work[i])),
        )
        row = work.pop(best_i)
        pcol = min(row)
        inv = row[pcol].inv()
        row = {j: v * inv for j, v in row.items()}
        nxt = []
        for r in work:
            c = r.get(pcol)
            if c:
                for j, v in row.items():
                    s = r.get(j)
                    s = -c * v if s is None else s - c * v
                    if s:
                        r[j] = s
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        work = nxt
        pivots.append(pcol)
        reduced.append(row)
    if reduce_up:
        for a in range(len(reduced) - 1, -1, -1):
            pcol, prow = pivots[a], reduced[a]
            for b in range(a):
                c = reduced[b].get(pcol)
                if c:
                    r = reduced[b]
                    for j, v in prow.items():
                        s = r.get(j)
                        s = -c * v if s is None else s - c * v
                        if s:
                            r[j] = s
                        else:
                            r.pop(j, None)
    order = sorted(range(len(pivots)), key=lambda a: pivots[a])
    return [pivots[a] for a in order], [reduced[a] for a in order]
