"""Exact linear algebra over the integers.

Dense matrices with plain Python ints, fraction-free (Bareiss)
determinants, and Smith normal form with the accompanying unimodular
transformation matrices. Arbitrary precision throughout; nothing in this
module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import NotSquare

__all__ = [
    "IntMatrix",
    "SnfResult",
    "QuotientStructure",
    "determinant",
    "smith_normal_form",
    "invariant_factors",
    "inverse_unimodular",
    "matmul",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable row-major integer matrix."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = [list(map(int, r)) for r in rows]
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
        else:
            width = 0 if cols is None else cols
        return cls(len(data), width, tuple(x for r in data for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def get(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.get(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(map(str, self.row(i))) for i in range(self.rows)) + "]"


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            out.append(sum(arow[k] * b.get(k, j) for k in range(a.cols)))
    return IntMatrix(a.rows, b.cols, tuple(out))


def determinant(m: IntMatrix) -> int:
    """Exact determinant via Bareiss fraction-free elimination.

    All divisions in the Bareiss recurrence are exact, so the result is
    the true integer determinant however large the entries grow.
    """
    if m.rows != m.cols:
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        pkk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pkk - aik * rk[j]) // prev
            ri[k] = 0
        prev = pkk
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form ``u @ a @ v == s``.

    ``s`` is diagonal with positive entries d1 | d2 | ... | dr followed by
    zeros; ``u`` and ``v`` are unimodular.
    """

    s: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.s.rows, self.s.cols)
        return tuple(self.s.get(i, i) for i in range(k))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) = x*a + y*b and g > 0 for (a, b) != (0, 0)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Diagonalise an integer matrix, tracking the row/column transforms.

    Pivoting follows the classical recipe: drag a minimal-absolute-value
    nonzero entry to the pivot position, clear its row and column, and
    repair divisibility failures by folding an offending row into the
    pivot row. Each clearing step is a single unimodular 2x2 combination
    built from the extended gcd, which keeps the transform matrices from
    the coefficient explosion plain Euclidean swap chains suffer. The
    factorisation is verified by multiplying back before returning.
    """
    r, c = m.rows, m.cols
    a = m.to_rows()
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(i: int, k: int, q: int) -> None:
        # row i += q * row k
        ri, rk = a[i], a[k]
        for j in range(c):
            ri[j] += q * rk[j]
        ui, uk = u[i], u[k]
        for j in range(r):
            ui[j] += q * uk[j]

    def combine_rows(i: int, k: int, m11: int, m12: int, m21: int, m22: int) -> None:
        # (row i, row k) <- (m11*row i + m12*row k, m21*row i + m22*row k)
        for mat in (a, u):
            ri, rk = mat[i], mat[k]
            for j in range(len(ri)):
                x, y = ri[j], rk[j]
                ri[j] = m11 * x + m12 * y
                rk[j] = m21 * x + m22 * y

    def combine_cols(j: int, k: int, m11: int, m12: int, m21: int, m22: int) -> None:
        # (col j, col k) <- (m11*col j + m12*col k, m21*col j + m22*col k)
        for mat in (a, v):
            for row in mat:
                x, y = row[j], row[k]
                row[j] = m11 * x + m12 * y
                row[k] = m21 * x + m22 * y

    def clear_column(t: int) -> None:
        for i in range(t + 1, r):
            entry = a[i][t]
            if not entry:
                continue
            pivot = a[t][t]
            if entry % pivot == 0:
                add_row(i, t, -(entry // pivot))
            else:
                g, x, y = _xgcd(pivot, entry)
                combine_rows(t, i, x, y, -(entry // g), pivot // g)

    def clear_row(t: int) -> None:
        for j in range(t + 1, c):
            entry = a[t][j]
            if not entry:
                continue
            pivot = a[t][t]
            if entry % pivot == 0:
                q = entry // pivot
                for row in a:
                    row[j] -= q * row[t]
                for row in v:
                    row[j] -= q * row[t]
            else:
                g, x, y = _xgcd(pivot, entry)
                combine_cols(t, j, x, y, -(entry // g), pivot // g)

    t = 0
    limit = min(r, c)
    while t < limit:
        best: tuple[int, int] | None = None
        best_abs = 0
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best_abs):
                    best = (i, j)
                    best_abs = abs(x)
                    if best_abs == 1:
                        break
            if best_abs == 1:
                break
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clear_column(t)
            clear_row(t)
            # column clearing is invalidated if the row pass mixed columns
            if any(a[i][t] for i in range(t + 1, r)):
                continue
            pivot = a[t][t]
            offender = None
            for i in range(t + 1, r):
                if any(a[i][j] % pivot for j in range(t + 1, c)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    result = SnfResult(
        s=IntMatrix.from_rows(a, cols=c),
        u=IntMatrix.from_rows(u, cols=r),
        v=IntMatrix.from_rows(v, cols=c),
    )
    if matmul(matmul(result.u, m), result.v) != result.s:
        raise RuntimeError("smith normal form self-check failed")
    diag = result.diagonal
    for i in range(1, len(diag)):
        if diag[i] and (diag[i - 1] == 0 or diag[i] % diag[i - 1]):
            raise RuntimeError("smith normal form divisor chain broken")
    return result


class QuotientStructure(NamedTuple):
    """Invariant-factor description of Z^n modulo a row lattice."""

    torsion: tuple[int, ...]
    free_rank: int


def invariant_factors(m: IntMatrix, ambient_rank: int) -> QuotientStructure:
    """Structure of Z^ambient_rank modulo the row space of ``m``.

    Returns the nontrivial invariant factors (each > 1, divisor-chained)
    together with the free rank of the quotient.
    """
    if m.cols != ambient_rank:
        raise ValueError("relation matrix width must equal the ambient rank")
    if m.rows == 0:
        return QuotientStructure((), ambient_rank)
    diag = smith_normal_form(m).diagonal
    rank = sum(1 for d in diag if d)
    torsion = tuple(d for d in diag if d > 1)
    return QuotientStructure(torsion, ambient_rank - rank)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix.

    Uses rational Gauss-Jordan elimination; raises ValueError if the
    matrix is singular or the inverse is not integral.
    """
    if m.rows != m.cols:
        raise NotSquare(f"inverse of a {m.rows}x{m.cols} matrix")
    n = m.rows
    aug = [
        [Fraction(m.get(i, j)) for j in range(n)]
        + [Fraction(int(i == k)) for k in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    entries = []
    for i in range(n):
        for j in range(n):
            q = aug[i][n + j]
            if q.denominator != 1:
                raise ValueError("matrix is not unimodular")
            entries.append(int(q))
    inv = IntMatrix(n, n, tuple(entries))
    if matmul(m, inv) != IntMatrix.identity(n):
        raise ValueError("matrix is not unimodular")
    return inv
