"""Exact integer matrices and Smith normal form.

Everything here works on Python ints, so there is no overflow at any
intermediate step.  Matrices are immutable; the row operations inside
:func:`smith_normal_form` run on private list copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntegerMatrix:
    """An immutable ``rows x cols`` matrix of arbitrary-precision integers.

    >>> A = IntegerMatrix.from_rows([[1, 2], [3, 4]])
    >>> (A @ IntegerMatrix.identity(2)) == A
    True
    >>> A.det()
    -2
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        """Build from a list of rows.  ``cols`` is required when there are no rows."""
        data = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(data), cols, tuple(x for r in data for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> IntegerMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows(
            ([self[i, j] for i in range(self.rows)] for j in range(self.cols)), self.rows
        )

    @property
    def T(self) -> IntegerMatrix:
        return self.transpose()

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other._col(j) for j in range(other.cols)]
        return IntegerMatrix.from_rows(
            ([sum(a * b for a, b in zip(self.row(i), c)) for c in ocols]
             for i in range(self.rows)),
            other.cols,
        )

    def _col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return IntegerMatrix(self.rows, self.cols,
                             tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self + (-other)

    def scale(self, k: int) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.cols, tuple(k * x for x in self.entries))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def vstack(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return IntegerMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def hstack(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntegerMatrix.from_rows(
            (self.row(i) + other.row(i) for i in range(self.rows)), self.cols + other.cols
        )

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()!r})" if self.rows else \
            f"IntegerMatrix.zeros(0, {self.cols})"


def vec_mat(v: Sequence[int], A: IntegerMatrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    if len(v) != A.rows:
        raise ValueError(f"vector of length {len(v)} against {A.rows} rows")
    return tuple(sum(v[i] * A[i, j] for i in range(A.rows) if v[i]) for j in range(A.cols))


@dataclass(frozen=True)
class SmithForm:
    """``D = U @ A @ V`` together with the inverses of ``U`` and ``V``."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    Uinv: IntegerMatrix
    Vinv: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_form(A: IntegerMatrix) -> SmithForm:
    """Smith normal form with transforms and their inverses.

    The pivot is always the entry of smallest nonzero absolute value in the
    remaining submatrix, ties broken by lowest (row, col).
    """
    m, n = A.rows, A.cols
    a = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # Row op "row_i += q * row_j" on a is left-multiplication by E; U <- E U,
    # Uinv <- Uinv E^-1 (column op col_j -= q * col_i).  Column ops dually.
    def row_add(i, j, q):
        if q:
            a[i] = [x + q * y for x, y in zip(a[i], a[j])]
            U[i] = [x + q * y for x, y in zip(U[i], U[j])]
            for r in Ui:
                r[j] -= q * r[i]

    def row_swap(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def col_add(i, j, q):
        if q:
            for r in a:
                r[i] += q * r[j]
            for r in V:
                r[i] += q * r[j]
            Vi[j] = [x - q * y for x, y in zip(Vi[j], Vi[i])]

    def col_swap(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            row_swap(t, pivot[0])
            col_swap(t, pivot[1])
            p = a[t][t]
            for i in range(t + 1, m):
                row_add(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                col_add(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(a[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            row_add(t, bad, 1)
        if pivot is None:
            break
        if a[t][t] < 0:
            row_neg(t)

    mk = IntegerMatrix.from_rows
    return SmithForm(mk(U, m), mk(a, n), mk(V, n), mk(Ui, m), mk(Vi, n))


def smith_normal_form(A: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(U, D, V)`` with ``D = U @ A @ V``, ``U`` and ``V`` unimodular.

    ``D`` is diagonal, nonnegative, and each diagonal entry divides the next
    (zeros, which everything divides, come last).

    >>> U, D, V = smith_normal_form(IntegerMatrix.from_rows([[2, 0], [0, 3]]))
    >>> D.tolist()
    [[1, 0], [0, 6]]
    """
    s = smith_form(A)
    return s.U, s.D, s.V


def left_kernel(A: IntegerMatrix) -> IntegerMatrix:
    """Basis (as rows) of the lattice ``{x : x @ A = 0}``."""
    s = smith_form(A)
    return IntegerMatrix.from_rows((s.U.row(i) for i in range(s.rank, A.rows)), A.rows)


def row_basis(A: IntegerMatrix) -> IntegerMatrix:
    """A basis (as rows) of the row lattice of ``A``."""
    s = smith_form(A)
    return IntegerMatrix.from_rows(
        ([d * x for x in s.Vinv.row(i)] for i, d in enumerate(s.diagonal) if d), A.cols
    )


def solve_row(A: IntegerMatrix, v: Sequence[int], smith: SmithForm | None = None):
    """Integer row vector ``x`` with ``x @ A == v``, or None when ``v`` is
    outside the row lattice of ``A``."""
    if len(v) != A.cols:
        raise ValueError("vector length does not match column count")
    s = smith or smith_form(A)
    w = vec_mat(v, s.V)
    diag = s.diagonal
    y = [0] * A.rows
    for j, x in enumerate(w):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            if x:
                return None
        elif x % d:
            return None
        else:
            y[j] = x // d
    return vec_mat(y, s.U)
