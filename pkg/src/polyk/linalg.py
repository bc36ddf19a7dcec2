"""Exact rational and integer linear algebra.

Everything in this package runs on arbitrary-precision rationals
(:class:`fractions.Fraction`) and Python integers; there is no floating
point anywhere.  This module provides the shared substrate: dense rational
matrices with rank / kernel / determinant-sign / solve operations, a few
integer-vector utilities (primitive ray generators, Bareiss determinants,
cofactor kernels), and Smith normal form over the integers.

Empty matrices (zero rows or zero columns) are legal in every operation and
behave as rank 0; the augmentation row of the cellular complex and the empty
face force these degenerate shapes through all code paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InternalInvariantError

Vector = tuple[Fraction, ...]
IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]

Scalar = int | Fraction


def qvec(values: Iterable) -> Vector:
    """Coerce an iterable of ints / Fractions / 'p/q' strings to a Vector."""
    return tuple(Fraction(x) for x in values)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Fraction:
    if len(u) != len(v):
        raise InternalInvariantError(f"dot of length {len(u)} with {len(v)}")
    return sum((Fraction(a) * b for a, b in zip(u, v)), start=Fraction(0))


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> Vector:
    return tuple(Fraction(c) * Fraction(x) for x in v)


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return all(x == 0 for x in v)


def primitive_vector(v: Sequence[Scalar]) -> IntVector:
    """Scale a nonzero rational vector by a positive rational to the unique
    primitive integer vector on the same ray (gcd of entries = 1)."""
    if all(type(x) is int for x in v):
        ints = list(v)
    else:
        fracs = [Fraction(x) for x in v]
        denom = lcm(*(x.denominator for x in fracs)) if fracs else 1
        ints = [int(x * denom) for x in fracs]
    if all(x == 0 for x in ints):
        raise InternalInvariantError("zero vector has no primitive form")
    g = gcd(*ints)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class QMatrix:
    """Dense rational matrix, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise InternalInvariantError("QMatrix shape mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> "QMatrix":
        data = tuple(qvec(r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int | None = None) -> "QMatrix":
        cols = [qvec(c) for c in columns]
        if rows is None:
            if not cols:
                raise InternalInvariantError("from_columns([]) needs an explicit row count")
            rows = len(cols[0])
        data = tuple(tuple(c[i] for c in cols) for i in range(rows))
        return cls(rows, len(cols), data)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows)))

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> tuple[Vector, ...]:
        return tuple(self.column(j) for j in range(self.cols))

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def hstack(self, other: "QMatrix") -> "QMatrix":
        if self.rows != other.rows:
            raise InternalInvariantError("hstack row mismatch")
        data = tuple(self.entries[i] + other.entries[i] for i in range(self.rows))
        return QMatrix(self.rows, self.cols + other.cols, data)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise InternalInvariantError("matmul shape mismatch")
        data = tuple(
            tuple(sum((self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                      start=Fraction(0))
                  for j in range(other.cols))
            for i in range(self.rows))
        return QMatrix(self.rows, other.cols, data)

    def mat_vec(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.cols:
            raise InternalInvariantError("mat_vec shape mismatch")
        return tuple(dot(r, v) for r in self.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)


def _rref(M: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    a = [list(r) for r in M.entries]
    pivots: list[int] = []
    pr = 0
    for col in range(M.cols):
        pivot_row = next((i for i in range(pr, M.rows) if a[i][col] != 0), None)
        if pivot_row is None:
            continue
        a[pr], a[pivot_row] = a[pivot_row], a[pr]
        inv = 1 / a[pr][col]
        a[pr] = [x * inv for x in a[pr]]
        for i in range(M.rows):
            if i != pr and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[pr])]
        pivots.append(col)
        pr += 1
        if pr == M.rows:
            break
    return a, pivots


def rank(M: QMatrix) -> int:
    """Rank over the rationals; 0 for an empty matrix."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_rref(M)[1])


def rank_of_vectors(vectors: Sequence[Sequence[Scalar]], ambient_dim: int) -> int:
    if not vectors:
        return 0
    return rank(QMatrix.from_rows(vectors, cols=ambient_dim))


def det_sign(M: QMatrix) -> int:
    """Sign of det(M) in {-1, 0, +1}, by exact Gaussian elimination.

    The 0x0 determinant is the empty product, sign +1.
    """
    if M.rows != M.cols:
        raise InternalInvariantError(f"det_sign of non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    a = [list(r) for r in M.entries]
    sign = 1
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        if a[col][col] < 0:
            sign = -sign
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return sign


def coords_in_basis(B: QMatrix, T: QMatrix) -> QMatrix:
    """Solve B @ X = T exactly, where the columns of B are independent and
    every column of T lies in their span.

    Violations of either precondition signal a geometry bug upstream and
    raise :class:`InternalInvariantError`.
    """
    if B.rows != T.rows:
        raise InternalInvariantError("coords_in_basis: row count mismatch")
    aug = B.hstack(T)
    a, pivots = _rref(aug)
    if len([p for p in pivots if p < B.cols]) != B.cols:
        raise InternalInvariantError("coords_in_basis: basis columns are dependent")
    if any(p >= B.cols for p in pivots):
        bad = next(p for p in pivots if p >= B.cols)
        raise InternalInvariantError(
            f"coords_in_basis: target column {bad - B.cols} is outside span of basis")
    data = tuple(tuple(a[i][B.cols + j] for j in range(T.cols)) for i in range(B.cols))
    return QMatrix(B.cols, T.cols, data)


def solve_in_span(B: QMatrix, target: Sequence[Scalar]) -> Vector | None:
    """Least-strict solve: a vector x with B @ x = target, or None when the
    target is outside the column span.  B need not have independent columns;
    free coordinates are set to zero."""
    t = qvec(target)
    if B.rows != len(t):
        raise InternalInvariantError("solve_in_span: shape mismatch")
    aug = B.hstack(QMatrix.from_columns([t]))
    a, pivots = _rref(aug)
    if any(p == B.cols for p in pivots):
        return None
    x = [Fraction(0)] * B.cols
    for row_idx, p in enumerate(pivots):
        x[p] = a[row_idx][B.cols]
    return tuple(x)


def kernel_basis(M: QMatrix) -> QMatrix:
    """Columns form a basis of the right null space over the rationals."""
    a, pivots = _rref(M)
    free = [j for j in range(M.cols) if j not in pivots]
    cols = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            v[p] = -a[row_idx][f]
        cols.append(v)
    if not cols:
        return QMatrix(M.cols, 0, tuple(() for _ in range(M.cols)))
    return QMatrix.from_columns(cols, rows=M.cols)


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------

def int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def int_identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def int_mat_mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if A and B and len(A[0]) != len(B):
        raise InternalInvariantError("int_mat_mul shape mismatch")
    inner = len(B)
    cols = len(B[0]) if B else 0
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols))
        for i in range(len(A)))


def int_mat_is_zero(A: IntMatrix) -> bool:
    return all(x == 0 for r in A for x in r)


def int_mat_abs(A: IntMatrix) -> IntMatrix:
    return tuple(tuple(abs(x) for x in r) for r in A)


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InternalInvariantError("bareiss_det needs a square matrix")
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def cofactor_kernel_vector(rows: Sequence[Sequence[int]], n: int) -> IntVector | None:
    """Kernel generator of an (n-1) x n integer matrix of full row rank.

    The i-th component is (-1)^i times the maximal minor omitting column i,
    so the result is integral and spans the kernel; returns None when the
    rows have rank < n-1 (all minors vanish).
    """
    if len(rows) != n - 1:
        raise InternalInvariantError("cofactor_kernel_vector: need exactly n-1 rows")
    comps = []
    for i in range(n):
        minor = [[r[j] for j in range(n) if j != i] for r in rows]
        d = bareiss_det(minor)
        comps.append(d if i % 2 == 0 else -d)
    if all(c == 0 for c in comps):
        return None
    return tuple(comps)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SNFResult:
    """U @ M @ V = D with U, V unimodular and D = diag(invariant factors)."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diagonal: IntVector


def _min_abs_pivot(a: list[list[int]], t: int, r: int, c: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_val = 0
    for i in range(t, r):
        for j in range(t, c):
            v = abs(a[i][j])
            if v != 0 and (best is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def smith_normal_form(mat: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form over the integers.

    Elementary row/column reduction with pivoting on the minimal nonzero
    absolute value; adequate for desk-scale matrices.  The decomposition
    U @ M @ V = D is re-verified before returning.
    """
    r = len(mat)
    c = len(mat[0]) if r else 0
    if any(len(row) != c for row in mat):
        raise InternalInvariantError("smith_normal_form: ragged input")
    a = [[int(x) for x in row] for row in mat]
    U = [list(row) for row in int_identity(r)]
    V = [list(row) for row in int_identity(c)]

    def row_op(i: int, k: int, q: int) -> None:  # row_i -= q * row_k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        U[i] = [x - q * y for x, y in zip(U[i], U[k])]

    def col_op(j: int, k: int, q: int) -> None:  # col_j -= q * col_k
        for row in a:
            row[j] -= q * row[k]
        for row in V:
            row[j] -= q * row[k]

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(r, c):
        pos = _min_abs_pivot(a, t, r, c)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            # clear column t below the pivot
            for i in range(t + 1, r):
                if a[i][t] != 0:
                    row_op(i, t, a[i][t] // a[t][t])
            # a leftover means the pivot did not divide; it is now smaller
            leftover = next((i for i in range(t + 1, r) if a[i][t] != 0), None)
            if leftover is not None:
                swap_rows(t, leftover)
                continue
            for j in range(t + 1, c):
                if a[t][j] != 0:
                    col_op(j, t, a[t][j] // a[t][t])
            leftover = next((j for j in range(t + 1, c) if a[t][j] != 0), None)
            if leftover is not None:
                swap_cols(t, leftover)
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if a[i][j] % a[t][t] != 0), None)
            if bad is None:
                break
            row_op(t, bad[0], -1)  # pull the offending row up, then re-reduce
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    D = int_matrix(a)
    Ut, Vt = int_matrix(U), int_matrix(V)
    if int_mat_mul(int_mat_mul(Ut, int_matrix(mat)), Vt) != D:
        raise InternalInvariantError("smith_normal_form: U @ M @ V != D")
    diag = tuple(a[i][i] for i in range(min(r, c)))
    if any(diag[i] != 0 and diag[i - 1] == 0 for i in range(1, len(diag))):
        raise InternalInvariantError("smith_normal_form: zeros do not trail")
    if any(diag[i - 1] != 0 and diag[i] % diag[i - 1] != 0 for i in range(1, len(diag)) if diag[i] != 0):
        raise InternalInvariantError("smith_normal_form: divisibility chain broken")
    return SNFResult(U=Ut, D=D, V=Vt, diagonal=diag)


def snf_rank(mat: Sequence[Sequence[int]]) -> int:
    return sum(1 for x in smith_normal_form(mat).diagonal if x != 0)
