"""A-linear algebra: Smith normal form over QQ[t], ranks and cokernels.

Matrices over the base ring A present graded pieces of modules: rows are
generators, columns are relations, the module is the cokernel.  Over QQ a
sparse fraction path (plain Gaussian elimination) carries the hot loops;
over QQ[t] everything runs through a dense Smith normal form with tracked
unimodular transforms.  smith_normal_form re-multiplies U*A*V and compares
with D on every call when assertions are enabled, so test runs verify every
decomposition they touch.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import QQ, QQT, KernelError
from .scalars import ONE, ZERO, Scalar


class ScalarMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [[ZERO] * ncols for _ in range(nrows)]
        else:
            rows = [list(r) for r in rows]
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise KernelError("ragged matrix")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "ScalarMatrix":
        m = cls(n, n)
        for i in range(n):
            m.rows[i][i] = ONE
        return m

    @classmethod
    def from_columns(cls, nrows: int, cols) -> "ScalarMatrix":
        cols = list(cols)
        m = cls(nrows, len(cols))
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                m.rows[i][j] = v
        return m

    def column(self, j: int):
        return [self.rows[i][j] for i in range(self.nrows)]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(
            self.ncols, self.nrows,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
        )

    def mul(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.ncols != other.nrows:
            raise KernelError("shape mismatch in matrix product")
        out = ScalarMatrix(self.nrows, other.ncols)
        for i in range(self.nrows):
            row = self.rows[i]
            orow = out.rows[i]
            for k in range(self.ncols):
                a = row[k]
                if a.is_zero():
                    continue
                brow = other.rows[k]
                for j in range(other.ncols):
                    b = brow[j]
                    if not b.is_zero():
                        orow[j] = orow[j] + a * b
        return out

    def evaluate(self, c) -> "ScalarMatrix":
        return ScalarMatrix(
            self.nrows, self.ncols,
            [[Scalar((e.evaluate(c),)) for e in row] for row in self.rows],
        )

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ScalarMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(e) for e in row) for row in self.rows
        )
        return "ScalarMatrix(%dx%d: %s)" % (self.nrows, self.ncols, body)


def _swap_rows(m: ScalarMatrix, i, j):
    m.rows[i], m.rows[j] = m.rows[j], m.rows[i]


def _addmul_row(m: ScalarMatrix, i, j, s: Scalar):
    """row_i += s * row_j"""
    if s.is_zero():
        return
    ri, rj = m.rows[i], m.rows[j]
    for k in range(m.ncols):
        if not rj[k].is_zero():
            ri[k] = ri[k] + s * rj[k]


def _scale_row(m: ScalarMatrix, i, s: Scalar):
    m.rows[i] = [s * e for e in m.rows[i]]


def _swap_cols(m: ScalarMatrix, i, j):
    for row in m.rows:
        row[i], row[j] = row[j], row[i]


def _addmul_col(m: ScalarMatrix, i, j, s: Scalar):
    """col_i += s * col_j"""
    if s.is_zero():
        return
    for row in m.rows:
        if not row[j].is_zero():
            row[i] = row[i] + s * row[j]


def _find_pivot(d: ScalarMatrix, k):
    best = None
    for i in range(k, d.nrows):
        row = d.rows[i]
        for j in range(k, d.ncols):
            e = row[j]
            if not e.is_zero():
                cand = (e.degree, i, j)
                if best is None or cand < best:
                    best = cand
    return None if best is None else (best[1], best[2])


def _diagonalize(d: ScalarMatrix, u: ScalarMatrix, v: ScalarMatrix, k0: int):
    k = k0
    while k < min(d.nrows, d.ncols):
        pos = _find_pivot(d, k)
        if pos is None:
            break
        while True:
            i, j = pos
            if i != k:
                _swap_rows(d, k, i)
                _swap_rows(u, k, i)
            if j != k:
                _swap_cols(d, k, j)
                _swap_cols(v, k, j)
            pivot = d.rows[k][k]
            for i in range(k + 1, d.nrows):
                if not d.rows[i][k].is_zero():
                    q = d.rows[i][k] // pivot
                    _addmul_row(d, i, k, -q)
                    _addmul_row(u, i, k, -q)
            for j in range(k + 1, d.ncols):
                if not d.rows[k][j].is_zero():
                    q = d.rows[k][j] // pivot
                    _addmul_col(d, j, k, -q)
                    _addmul_col(v, j, k, -q)
            done = all(
                d.rows[i][k].is_zero() for i in range(k + 1, d.nrows)
            ) and all(d.rows[k][j].is_zero() for j in range(k + 1, d.ncols))
            if done:
                break
            pos = _find_pivot(d, k)
        k += 1


def smith_normal_form(mat: ScalarMatrix):
    """Return (U, D, V) with U*mat*V == D, D diagonal, d1 | d2 | ... monic.

    U and V are products of elementary (unimodular) operations.
    """
    d = ScalarMatrix(mat.nrows, mat.ncols, mat.rows)
    u = ScalarMatrix.identity(mat.nrows)
    v = ScalarMatrix.identity(mat.ncols)
    _diagonalize(d, u, v, 0)
    limit = min(d.nrows, d.ncols)
    while True:
        fixed = True
        for i in range(limit):
            a = d.rows[i][i]
            if a.is_zero():
                break
            for j in range(i + 1, limit):
                b = d.rows[j][j]
                if b.is_zero():
                    break
                if not a.divides(b):
                    _addmul_col(d, i, j, ONE)
                    _addmul_col(v, i, j, ONE)
                    _diagonalize(d, u, v, i)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            break
    for i in range(limit):
        e = d.rows[i][i]
        if not e.is_zero() and e.leading_coefficient() != 1:
            s = Scalar((Fraction(1) / e.leading_coefficient(),))
            _scale_row(d, i, s)
            _scale_row(u, i, s)
    if __debug__:
        assert u.mul(mat).mul(v) == d, "smith transform reconstruction failed"
        diag = [d.rows[i][i] for i in range(limit) if not d.rows[i][i].is_zero()]
        assert all(diag[i].divides(diag[i + 1]) for i in range(len(diag) - 1))
    return u, d, v


def smith_diagonal(mat: ScalarMatrix):
    _, d, _ = smith_normal_form(mat)
    return [d.rows[i][i] for i in range(min(d.nrows, d.ncols))]


def frac_cols_rank(cols) -> int:
    """Rank of a sparse matrix given as columns {row: Fraction}."""
    pivots = {}
    rank = 0
    for col in cols:
        work = dict(col)
        while work:
            r = min(work)
            piv = pivots.get(r)
            if piv is None:
                inv = Fraction(1) / work[r]
                pivots[r] = {i: v * inv for i, v in work.items()}
                rank += 1
                break
            f = work.pop(r)
            for i, v in piv.items():
                if i == r:
                    continue
                acc = work.get(i, 0) - f * v
                if acc:
                    work[i] = acc
                else:
                    work.pop(i, None)
    return rank


def scalar_matrix_rank(mat: ScalarMatrix, base: str) -> int:
    if base == QQ:
        cols = []
        for j in range(mat.ncols):
            col = {}
            for i in range(mat.nrows):
                e = mat.rows[i][j]
                if not e.is_zero():
                    col[i] = e.as_fraction()
            cols.append(col)
        return frac_cols_rank(cols)
    return sum(1 for e in smith_diagonal(mat) if not e.is_zero())


def base_invariants(mat: ScalarMatrix, base: str):
    """(rank, invariant factors) per the base ring contract.

    Over QQ: matrix rank, no factors.  Over QQ[t]: free rank of the
    cokernel of the presentation (rows are generators, columns relations)
    plus its non-unit invariant factors, monic and each dividing the next.
    """
    if base == QQ:
        return scalar_matrix_rank(mat, QQ), []
    diag = smith_diagonal(mat)
    nonzero = [e for e in diag if not e.is_zero()]
    factors = [e for e in nonzero if e.degree > 0]
    return mat.nrows - len(nonzero), factors


def cokernel_invariants(mat: ScalarMatrix, base: str):
    """Free rank and torsion of coker(mat), uniformly over both bases."""
    if base == QQ:
        return mat.nrows - scalar_matrix_rank(mat, QQ), ()
    rank, factors = base_invariants(mat, QQT)
    return rank, tuple(factors)


def kernel_basis(mat: ScalarMatrix):
    """Columns spanning ker(mat) as a free module (entries Scalar)."""
    _, d, v = smith_normal_form(mat)
    out = []
    for j in range(mat.ncols):
        if j >= mat.nrows or d.rows[j][j].is_zero():
            out.append(v.column(j))
    return out


def solve_in_span(mat: ScalarMatrix, targets):
    """Solve mat * x = b for each b in targets; None where unsolvable.

    targets is a list of length-nrows Scalar columns; returns a list of
    length-ncols Scalar columns (or None entries).
    """
    u, d, v = smith_normal_form(mat)
    limit = min(mat.nrows, mat.ncols)
    out = []
    for b in targets:
        ub = [
            sum((u.rows[i][k] * b[k] for k in range(mat.nrows)), ZERO)
            for i in range(mat.nrows)
        ]
        y = [ZERO] * mat.ncols
        ok = True
        for i in range(mat.nrows):
            if i < limit and not d.rows[i][i].is_zero():
                q, r = divmod(ub[i], d.rows[i][i])
                if not r.is_zero():
                    ok = False
                    break
                y[i] = q
            elif not ub[i].is_zero():
                ok = False
                break
        if not ok:
            out.append(None)
            continue
        x = [
            sum((v.rows[i][k] * y[k] for k in range(mat.ncols)), ZERO)
            for i in range(mat.ncols)
        ]
        out.append(x)
    return out


class PieceMatrix:
    """Sparse presentation matrix of a graded piece as an A-module.

    cols holds {row_index: coefficient} dicts; coefficients are Fractions
    over QQ and Scalars over QQ[t].  Cheap to build, converted to a dense
    ScalarMatrix only when Smith normal form is actually required.
    """

    __slots__ = ("nrows", "ncols", "cols", "base")

    def __init__(self, nrows: int, cols, base: str):
        self.nrows = nrows
        self.cols = list(cols)
        self.ncols = len(self.cols)
        self.base = base

    def to_scalar_matrix(self) -> ScalarMatrix:
        m = ScalarMatrix(self.nrows, self.ncols)
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                m.rows[i][j] = v if isinstance(v, Scalar) else Scalar((v,))
        return m

    def rank(self) -> int:
        if self.base == QQ:
            return frac_cols_rank(self.cols)
        return scalar_matrix_rank(self.to_scalar_matrix(), QQT)

    def cokernel(self):
        """(free rank, torsion factors) of the cokernel."""
        if self.base == QQ:
            return self.nrows - frac_cols_rank(self.cols), ()
        return cokernel_invariants(self.to_scalar_matrix(), QQT)
