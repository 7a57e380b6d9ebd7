"""Exact dense matrices over the rationals and Gaussian rationals.

Matrices are immutable, carry a real/complex field tag, and all arithmetic,
elimination, inversion and kernel computations are exact. Characteristic
polynomials are computed by an exact Hessenberg reduction followed by the
last-column determinant expansion; the Faddeev-LeVerrier iteration is kept
as an independent cross-check.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .exceptions import (
    DimensionMismatch,
    FieldMismatch,
    ParameterError,
    SingularMatrix,
)
from .polynomials import Polynomial
from .scalars import ONE, ZERO, GaussianRational, ScalarLike, as_scalar, format_scalar

REAL = "real"
COMPLEX = "complex"


class Matrix:
    """Immutable dense matrix with GaussianRational entries (row-major)."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: int, cols: int, entries: Sequence, field: str = COMPLEX):
        if field not in (REAL, COMPLEX):
            raise FieldMismatch(f"unknown field tag {field!r}")
        ents = tuple(as_scalar(e) for e in entries)
        if len(ents) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(ents)}"
            )
        if field == REAL:
            for idx, e in enumerate(ents):
                if e.im:
                    raise FieldMismatch(
                        f"real matrix has complex entry {e!r} at position {idx}"
                    )
        self.rows = rows
        self.cols = cols
        self.entries = ents
        self.field = field

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], field: str = COMPLEX):
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise DimensionMismatch("ragged rows")
            flat.extend(row)
        return cls(r, c, flat, field)

    @classmethod
    def identity(cls, n: int, field: str = COMPLEX):
        ents = [ONE if i == j else ZERO for i in range(n) for j in range(n)]
        return cls(n, n, ents, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: str = COMPLEX):
        return cls(rows, cols, [ZERO] * (rows * cols), field)

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike], field: str = COMPLEX):
        n = len(values)
        ents = [as_scalar(values[i]) if i == j else ZERO for i in range(n) for j in range(n)]
        return cls(n, n, ents, field)

    @classmethod
    def trailing_identity(cls, n: int, field: str = COMPLEX):
        """The matrix with 1's on the trailing (anti-) diagonal, zeros elsewhere."""
        ents = [ONE if i + j == n - 1 else ZERO for i in range(n) for j in range(n)]
        return cls(n, n, ents, field)

    @classmethod
    def column(cls, values: Sequence[ScalarLike], field: str = COMPLEX):
        return cls(len(values), 1, list(values), field)

    @classmethod
    def unit_column(cls, n: int, i: int, field: str = COMPLEX):
        return cls(n, 1, [ONE if k == i else ZERO for k in range(n)], field)

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence["Matrix"]], field: str | None = None):
        """Assemble a block matrix; block shapes must tile consistently."""
        if field is None:
            field = grid[0][0].field
        row_heights = [row[0].rows for row in grid]
        col_widths = [b.cols for b in grid[0]]
        for row in grid:
            for j, b in enumerate(row):
                if b.cols != col_widths[j] or b.rows != row[0].rows:
                    raise DimensionMismatch("inconsistent block shapes")
        out = []
        for bi, row in enumerate(grid):
            for r in range(row_heights[bi]):
                for b in row:
                    out.extend(b.entries[r * b.cols : (r + 1) * b.cols])
        return cls(sum(row_heights), sum(col_widths), out, field)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["Matrix"], field: str | None = None):
        if field is None:
            field = blocks[0].field
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        rows = [[ZERO] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    rows[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(rows, field)

    # -- access ---------------------------------------------------------------

    def __getitem__(self, key) -> GaussianRational:
        i, j = key
        return self.entries[i * self.cols + j]

    def row_list(self, i: int) -> list[GaussianRational]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_lists(self) -> list[list[GaussianRational]]:
        return [self.row_list(i) for i in range(self.rows)]

    def col(self, j: int) -> "Matrix":
        return Matrix(self.rows, 1, [self[i, j] for i in range(self.rows)], self.field)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        ents = []
        for i in range(r0, r1):
            ents.extend(self.entries[i * self.cols + c0 : i * self.cols + c1])
        return Matrix(r1 - r0, c1 - c0, ents, self.field)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_hermitian(self) -> bool:
        if not self.is_square:
            return False
        for i in range(self.rows):
            for j in range(i, self.cols):
                if self[i, j] != self[j, i].conjugate():
                    return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_scalar(self[i, j]) for j in range(self.cols))
            for i in range(self.rows)
        )
        return f"Matrix[{self.rows}x{self.cols},{self.field}]({body})"

    # -- field handling ---------------------------------------------------------

    def complexified(self) -> "Matrix":
        """The same matrix with a complex field tag."""
        if self.field == COMPLEX:
            return self
        return Matrix(self.rows, self.cols, self.entries, COMPLEX)

    def with_field(self, field: str) -> "Matrix":
        return Matrix(self.rows, self.cols, self.entries, field)

    def _join_field(self, other: "Matrix") -> str:
        if self.field != other.field:
            raise FieldMismatch(f"field tags differ: {self.field} vs {other.field}")
        return self.field

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        field = self._join_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix(
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
            field,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries], self.field)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self._matmul(other)
        c = as_scalar(other)
        field = self.field if (self.field == COMPLEX or not c.im) else COMPLEX
        return Matrix(self.rows, self.cols, [c * a for a in self.entries], field)

    def __rmul__(self, other):
        return self * other

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self._matmul(other)

    def _matmul(self, other: "Matrix") -> "Matrix":
        field = self._join_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        n, m, p = self.rows, self.cols, other.cols
        out = [ZERO] * (n * p)
        a, b = self.entries, other.entries
        for i in range(n):
            arow = a[i * m : (i + 1) * m]
            orow = i * p
            for k, aik in enumerate(arow):
                if not aik:
                    continue
                brow = b[k * p : (k + 1) * p]
                for j, bkj in enumerate(brow):
                    if bkj:
                        out[orow + j] = out[orow + j] + aik * bkj
        return Matrix(n, p, out, field)

    def transpose(self) -> "Matrix":
        ents = [self[j, i] for i in range(self.cols) for j in range(self.rows)]
        return Matrix(self.cols, self.rows, ents, self.field)

    def conj_transpose(self) -> "Matrix":
        ents = [self[j, i].conjugate() for i in range(self.cols) for j in range(self.rows)]
        return Matrix(self.cols, self.rows, ents, self.field)

    def trace(self) -> GaussianRational:
        if not self.is_square:
            raise DimensionMismatch("trace of a non-square matrix")
        t = ZERO
        for i in range(self.rows):
            t = t + self[i, i]
        return t

    def scalar(self) -> GaussianRational:
        if (self.rows, self.cols) != (1, 1):
            raise DimensionMismatch("not a 1x1 matrix")
        return self.entries[0]

    # -- elimination-based operations -----------------------------------------

    def det(self) -> GaussianRational:
        if not self.is_square:
            raise DimensionMismatch("determinant of a non-square matrix")
        a = self.to_lists()
        n = self.rows
        det = ONE
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return ZERO
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c]
            inv = ONE / a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] * inv
                if f:
                    arow, crow = a[r], a[c]
                    for j in range(c, n):
                        arow[j] = arow[j] - f * crow[j]
        return det

    def rank(self) -> int:
        _, pivots = _rref(self.to_lists())
        return len(pivots)

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = [
            self.row_list(i) + [ONE if i == j else ZERO for j in range(n)]
            for i in range(n)
        ]
        red, pivots = _rref(aug)
        if len(pivots) < n or any(p >= n for p in pivots):
            raise SingularMatrix("matrix is singular")
        inv_rows = [None] * n
        for r, p in enumerate(pivots):
            inv_rows[p] = red[r][n:]
        return Matrix.from_rows(inv_rows, self.field)

    def kernel_basis(self) -> list["Matrix"]:
        """Exact basis of the null space; empty list when trivial."""
        red, pivots = _rref(self.to_lists())
        pivot_set = dict((p, r) for r, p in enumerate(pivots))
        basis = []
        for f in range(self.cols):
            if f in pivot_set:
                continue
            v = [ZERO] * self.cols
            v[f] = ONE
            for p, r in pivot_set.items():
                w = red[r][f]
                if w:
                    v[p] = -w
            basis.append(Matrix.column(v, self.field))
        return basis

    def solve_right(self, rhs: "Matrix") -> "Matrix":
        """A particular solution X of self @ X = rhs (free variables set to 0)."""
        field = self._join_field(rhs)
        if self.rows != rhs.rows:
            raise DimensionMismatch("row count mismatch in solve")
        m = self.cols
        aug = [self.row_list(i) + rhs.row_list(i) for i in range(self.rows)]
        red, pivots = _rref([row[:] for row in aug], stop_col=m)
        sol = [[ZERO] * rhs.cols for _ in range(m)]
        for r, p in enumerate(pivots):
            sol[p] = red[r][m:]
        # consistency: rows without a pivot must have zero right-hand side
        for r in range(len(pivots), len(red)):
            if any(red[r][m:]):
                raise SingularMatrix("inconsistent linear system")
        return Matrix.from_rows(sol, field)


def hstack(mats: Sequence[Matrix]) -> Matrix:
    mats = [m for m in mats]
    if not mats:
        raise ParameterError("hstack of nothing")
    field = mats[0].field
    rows = mats[0].rows
    out_rows = []
    for i in range(rows):
        row: list[GaussianRational] = []
        for m in mats:
            if m.rows != rows:
                raise DimensionMismatch("hstack with differing row counts")
            row.extend(m.row_list(i))
        out_rows.append(row)
    return Matrix.from_rows(out_rows, field)


def _rref(rows: list[list[GaussianRational]], stop_col: int | None = None):
    """In-place reduced row echelon form (leftmost pivots, pivot rows first).

    Returns (rows, pivot_columns). Only columns < stop_col are eligible as
    pivots; trailing columns ride along (used for augmented systems).
    """
    if not rows:
        return rows, []
    ncols = len(rows[0])
    limit = ncols if stop_col is None else stop_col
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                irow = rows[i]
                for j in range(c, ncols):
                    if prow[j]:
                        irow[j] = irow[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def kernel_of_sparse_rows(
    rows: Iterable[dict[int, GaussianRational]], ncols: int
) -> list[dict[int, GaussianRational]]:
    """Kernel basis of a sparse row system; rows are {column: coefficient}.

    Gauss-Jordan with smallest-row-first processing; pivot rows are kept
    mutually reduced so kernel vectors read off directly. Deterministic.
    """
    pivot_rows: dict[int, dict[int, GaussianRational]] = {}
    pending = [dict(r) for r in rows if r]
    pending.sort(key=lambda r: (len(r), sorted(r)))
    for row in pending:
        # pivot rows are mutually reduced, so one sweep removes all hits
        hits = [c for c in row if c in pivot_rows]
        while hits:
            for c in hits:
                coef = row.pop(c, None)
                if not coef:
                    continue
                for cc, vv in pivot_rows[c].items():
                    if cc == c:
                        continue
                    nv = row.get(cc, ZERO) - coef * vv
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            hits = [c for c in row if c in pivot_rows]
        if not row:
            continue
        p = min(row)
        inv = ONE / row[p]
        nrow = {c: v * inv for c, v in row.items()}
        for prow in pivot_rows.values():
            coef = prow.pop(p, None)
            if coef:
                for cc, vv in nrow.items():
                    if cc == p:
                        continue
                    nv = prow.get(cc, ZERO) - coef * vv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivot_rows[p] = nrow
    basis = []
    for f in range(ncols):
        if f in pivot_rows:
            continue
        v = {f: ONE}
        for c, prow in pivot_rows.items():
            w = prow.get(f)
            if w:
                v[c] = -w
        basis.append(v)
    return basis


# -- characteristic polynomials ------------------------------------------------


def _hessenberg(a: list[list[GaussianRational]]) -> list[list[GaussianRational]]:
    n = len(a)
    for j in range(n - 2):
        if not a[j + 1][j]:
            piv = next((i for i in range(j + 2, n) if a[i][j]), None)
            if piv is None:
                continue
            a[j + 1], a[piv] = a[piv], a[j + 1]
            for row in a:
                row[j + 1], row[piv] = row[piv], row[j + 1]
        inv = ONE / a[j + 1][j]
        for i in range(j + 2, n):
            f = a[i][j] * inv
            if not f:
                continue
            src, dst = a[j + 1], a[i]
            for c in range(j, n):
                if src[c]:
                    dst[c] = dst[c] - f * src[c]
            for r in range(n):
                if a[r][i]:
                    a[r][j + 1] = a[r][j + 1] + f * a[r][i]
    return a


def char_poly(m: Matrix) -> Polynomial:
    """Exact characteristic polynomial det(tI - M), monic.

    Computed by similarity reduction to Hessenberg form and expansion of the
    determinant along the last column (an O(n^3) fraction-exact scheme).
    """
    if not m.is_square:
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    n = m.rows
    if n == 0:
        return Polynomial([1])
    h = _hessenberg(m.to_lists())
    ps = [Polynomial([1])]
    for k in range(1, n + 1):
        t_minus = Polynomial([-h[k - 1][k - 1], 1])
        p = t_minus * ps[k - 1]
        prod = ONE
        for i in range(k - 2, -1, -1):
            prod = prod * h[i + 1][i]
            if not prod:
                break
            coef = h[i][k - 1] * prod
            if coef:
                p = p - coef * ps[i]
        ps.append(p)
    return ps[n]


def faddeev_leverrier(m: Matrix) -> Polynomial:
    """Characteristic polynomial by the Faddeev-LeVerrier iteration.

    O(n^4); retained as an independent oracle for char_poly.
    """
    if not m.is_square:
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = Matrix.identity(n, m.field)
    for k in range(1, n + 1):
        mk = m @ mk
        c = -(mk.trace() / k)
        coeffs[n - k] = c
        if k < n:
            mk = mk + Matrix.identity(n, m.field) * c
    return Polynomial(coeffs)


def apply_poly(p: Polynomial, m: Matrix) -> Matrix:
    """Evaluate a polynomial at a square matrix (Horner)."""
    if not m.is_square:
        raise DimensionMismatch("polynomial of a non-square matrix")
    acc = Matrix.zeros(m.rows, m.rows, m.field)
    ident = Matrix.identity(m.rows, m.field)
    for c in reversed(p.coeffs):
        acc = acc @ m + ident * c
    return acc


def mat_power(m: Matrix, k: int) -> Matrix:
    if k < 0:
        raise ParameterError("negative matrix power")
    acc = Matrix.identity(m.rows, m.field)
    base = m
    while k:
        if k & 1:
            acc = acc @ base
        base = base @ base if k > 1 else base
        k >>= 1
    return acc
