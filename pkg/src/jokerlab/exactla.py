"""Dense exact linear algebra over GF(2^k).

Matrices are immutable wrappers around ``uint8`` arrays holding element
codes.  Multiplication splits both operands into GF(2) bit planes and uses
float matmul (exact: sums stay far below 2^53), elimination is vectorised
row-by-row through the field's multiplication table.  Pivoting always takes
the first nonzero entry in column order so results are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .ffield import FieldElement, FiniteField

__all__ = [
    "Matrix",
    "rref",
    "rank",
    "kernel",
    "kernel_basis",
    "solve",
    "inverse",
    "is_invertible",
    "kronecker",
    "column_space",
    "in_column_space",
    "extend_basis",
    "hstack",
    "vstack",
    "block_diag",
]


def _as_code(field: FiniteField, x) -> int:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise ValueError("entry from a different field")
        return x.value
    if isinstance(x, str):
        return field.parse(x)
    x = int(x)
    if not 0 <= x < field.order:
        raise ValueError(f"entry code {x} out of range for {field.name}")
    return x


class Matrix:
    """Immutable matrix over a GF(2^k) field."""

    __slots__ = ("field", "a")

    def __init__(self, field: FiniteField, array):
        arr = np.array(array, dtype=np.uint8, copy=True)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and int(arr.max()) >= field.order:
            raise ValueError(f"entry out of range for {field.name}")
        arr.setflags(write=False)
        self.field = field
        self.a = arr

    @classmethod
    def _wrap(cls, field: FiniteField, arr: np.ndarray) -> Matrix:
        m = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        arr.setflags(write=False)
        m.field = field
        m.a = arr
        return m

    @classmethod
    def from_rows(cls, field: FiniteField, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = list(rows)
        if not rows:
            return cls.zeros(field, 0, cols or 0)
        data = [[_as_code(field, x) for x in row] for row in rows]
        width = {len(r) for r in data}
        if len(width) != 1:
            raise ValueError("ragged rows")
        return cls._wrap(field, np.array(data, dtype=np.uint8).reshape(len(data), width.pop()))

    @classmethod
    def zeros(cls, field: FiniteField, rows: int, cols: int) -> Matrix:
        return cls._wrap(field, np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> Matrix:
        return cls._wrap(field, np.eye(n, dtype=np.uint8))

    @classmethod
    def column(cls, field: FiniteField, entries: Sequence) -> Matrix:
        return cls.from_rows(field, [[x] for x in entries], cols=1)

    @classmethod
    def from_text(cls, field: FiniteField, text: str) -> Matrix:
        rows = [line.split() for line in text.replace(";", "\n").splitlines() if line.strip()]
        return cls.from_rows(field, rows)

    def to_text(self) -> str:
        fmt = self.field.format
        return "\n".join(" ".join(fmt(int(x)) for x in row) for row in self.a)

    # shape
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __getitem__(self, key):
        if isinstance(key, tuple) and len(key) == 2 and all(isinstance(k, (int, np.integer)) for k in key):
            return FieldElement(self.field, int(self.a[key]))
        sub = self.a[key]
        if sub.ndim != 2:
            raise IndexError("index with two slices to take a submatrix")
        return Matrix._wrap(self.field, sub)

    def col(self, j: int) -> Matrix:
        return Matrix._wrap(self.field, self.a[:, j : j + 1])

    def columns(self) -> list[Matrix]:
        return [self.col(j) for j in range(self.cols)]

    def entries(self) -> list[list[FieldElement]]:
        return [[FieldElement(self.field, int(x)) for x in row] for row in self.a]

    # arithmetic
    def _same(self, other: Matrix) -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.field != self.field:
            raise ValueError("matrices over different fields")

    def __add__(self, other: Matrix) -> Matrix:
        self._same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap(self.field, self.a ^ other.a)

    __sub__ = __add__

    def __neg__(self) -> Matrix:
        return self

    def __matmul__(self, other: Matrix) -> Matrix:
        self._same(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix._wrap(self.field, _matmul(self.field, self.a, other.a))

    def scale(self, c) -> Matrix:
        c = _as_code(self.field, c)
        return Matrix._wrap(self.field, self.field.mul_table[c][self.a])

    def __rmul__(self, c) -> Matrix:
        return self.scale(c)

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    def __pow__(self, n: int) -> Matrix:
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        out = Matrix.identity(self.field, self.rows)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(self.field, self.a.T)

    def frobenius(self) -> Matrix:
        return Matrix._wrap(self.field, self.field.sq_table[self.a])

    def is_zero(self) -> bool:
        return not self.a.any()

    def is_identity(self) -> bool:
        return self.rows == self.cols and np.array_equal(self.a, np.eye(self.rows, dtype=np.uint8))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and self.shape == other.shape
            and np.array_equal(self.a, other.a)
        )

    def __hash__(self) -> int:
        return hash((self.field.modulus, self.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(int(x)) for x in row) for row in self.a)
        return f"Matrix[{self.field.name} {self.rows}x{self.cols}]({body})"


def _xpowers(field: FiniteField, count: int) -> list[int]:
    out, cur = [], 1
    for _ in range(count):
        out.append(cur)
        cur = field.mul(cur, 2) if field.order > 2 else cur
    return out


def _matmul(field: FiniteField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n, m = A.shape[0], B.shape[1]
    if A.shape[1] == 0 or n == 0 or m == 0:
        return np.zeros((n, m), dtype=np.uint8)
    k = field.degree
    Ab = [((A >> r) & 1).astype(np.float64) for r in range(k)]
    Bb = [((B >> r) & 1).astype(np.float64) for r in range(k)]
    planes: dict[int, np.ndarray] = {}
    for r in range(k):
        for s in range(k):
            P = (Ab[r] @ Bb[s]).astype(np.int64) & 1
            planes[r + s] = planes[r + s] ^ P if r + s in planes else P
    xp = _xpowers(field, 2 * k - 1)
    out = np.zeros((n, m), dtype=np.uint8)
    for t, P in planes.items():
        out ^= (P * xp[t]).astype(np.uint8)
    return out


def _rref_array(field: FiniteField, a: np.ndarray, ncols: int | None = None):
    """Row reduce in place; only the first ``ncols`` columns are pivot candidates."""
    M = np.array(a, dtype=np.uint8, copy=True)
    rows, cols = M.shape
    limit = cols if ncols is None else ncols
    mul = field.mul_table
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        piv = int(M[r, c])
        if piv != 1:
            M[r] = mul[field.inv_table[piv]][M[r]]
        factors = M[:, c].copy()
        factors[r] = 0
        idx = np.flatnonzero(factors)
        if idx.size:
            M[idx] ^= mul[factors[idx][:, None], M[r][None, :]]
        pivots.append(c)
        r += 1
    return M, pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    R, piv = _rref_array(m.field, m.a)
    return Matrix._wrap(m.field, R), tuple(piv), len(piv)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    a = m.a if m.rows <= m.cols else m.a.T
    return len(_rref_array(m.field, a)[1])


def _kernel_array(field: FiniteField, a: np.ndarray) -> np.ndarray:
    rows, cols = a.shape
    R, piv = _rref_array(field, a)
    free = [c for c in range(cols) if c not in set(piv)]
    K = np.zeros((cols, len(free)), dtype=np.uint8)
    for t, f in enumerate(free):
        K[f, t] = 1
        for i, p in enumerate(piv):
            K[p, t] = R[i, f]
    return K


def kernel(m: Matrix) -> Matrix:
    """Right null space as the columns of a matrix (cols - rank of them)."""
    return Matrix._wrap(m.field, _kernel_array(m.field, m.a))


def kernel_basis(m: Matrix) -> list[Matrix]:
    """Right null space basis as a list of column vectors."""
    return kernel(m).columns()


def solve(m: Matrix, rhs: Matrix) -> Matrix | None:
    """Return x with m @ x == rhs, or None when the system is inconsistent."""
    if m.field != rhs.field:
        raise ValueError("matrices over different fields")
    if m.rows != rhs.rows:
        raise ValueError(f"row mismatch: {m.rows} vs {rhs.rows}")
    n = m.cols
    if m.rows == 0:
        return Matrix.zeros(m.field, n, rhs.cols)
    aug = np.concatenate([m.a, rhs.a], axis=1)
    R, piv = _rref_array(m.field, aug, ncols=n)
    r = len(piv)
    if R[r:, n:].any():
        return None
    x = np.zeros((n, rhs.cols), dtype=np.uint8)
    if r:
        x[piv, :] = R[:r, n:]
    return Matrix._wrap(m.field, x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None:
        raise ValueError("matrix is singular")
    return x


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product with block (i, j) equal to a[i, j] * b."""
    if a.field != b.field:
        raise ValueError("matrices over different fields")
    mul = a.field.mul_table
    blocks = mul[a.a[:, None, :, None], b.a[None, :, None, :]]
    return Matrix._wrap(a.field, blocks.reshape(a.rows * b.rows, a.cols * b.cols))


def hstack(mats: Iterable[Matrix], field: FiniteField | None = None, rows: int | None = None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, rows or 0, 0)
    return Matrix._wrap(mats[0].field, np.concatenate([m.a for m in mats], axis=1))


def vstack(mats: Iterable[Matrix], field: FiniteField | None = None, cols: int | None = None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, 0, cols or 0)
    return Matrix._wrap(mats[0].field, np.concatenate([m.a for m in mats], axis=0))


def block_diag(mats: Sequence[Matrix], field: FiniteField | None = None) -> Matrix:
    field = mats[0].field if mats else field
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = np.zeros((r, c), dtype=np.uint8)
    i = j = 0
    for m in mats:
        out[i : i + m.rows, j : j + m.cols] = m.a
        i += m.rows
        j += m.cols
    return Matrix._wrap(field, out)


def column_space(m: Matrix) -> Matrix:
    """Basis of the column space: the pivot columns of ``m``."""
    _, piv = _rref_array(m.field, m.a)
    return Matrix._wrap(m.field, m.a[:, piv])


def in_column_space(m: Matrix, v: Matrix) -> bool:
    return solve(m, v) is not None


def extend_basis(sub: Matrix, whole: Matrix) -> list[int]:
    """Indices of columns of ``whole`` that extend ``column_space(sub)`` to span everything."""
    aug = np.concatenate([sub.a, whole.a], axis=1)
    _, piv = _rref_array(sub.field, aug)
    return [p - sub.cols for p in piv if p >= sub.cols]
