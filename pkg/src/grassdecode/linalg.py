"""Dense exact linear algebra over finite fields.

Matrices are immutable and store element codes (see :mod:`grassdecode.fields`).
Index sets passed to :func:`minor` are 1-based, matching the multi-index
convention used for Plücker coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import FieldMismatchError, InvalidInputError
from .fields import Field, FieldElement, PrimeField

Vector = tuple[int, ...]


class Matrix:
    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(_code(field, x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise InvalidInputError("column count required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise InvalidInputError("ragged matrix rows")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, field: Field, rows: tuple[Vector, ...], ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.field, m.rows, m.nrows, m.ncols = field, rows, len(rows), ncols
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls._raw(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls._raw(field, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.rows[i][j])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field.token, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self.rows]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def _same_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"matrices over {self.field} and {other.field}")

    def transpose(self) -> "Matrix":
        if not self.nrows:
            return Matrix._raw(self.field, tuple(() for _ in range(self.ncols)), 0)
        return Matrix._raw(self.field, tuple(zip(*self.rows)), self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise InvalidInputError(f"shape mismatch {self.shape} vs {other.shape}")
        add = self.field.add
        return Matrix._raw(self.field, tuple(tuple(add(a, b) for a, b in zip(r, s))
                                             for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise InvalidInputError(f"shape mismatch {self.shape} vs {other.shape}")
        sub = self.field.sub
        return Matrix._raw(self.field, tuple(tuple(sub(a, b) for a, b in zip(r, s))
                                             for r, s in zip(self.rows, other.rows)), self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def scale(self, c: int) -> "Matrix":
        mul = self.field.mul
        return Matrix._raw(self.field, tuple(tuple(mul(c, a) for a in r) for r in self.rows), self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        """0-based row/column selection."""
        return Matrix._raw(self.field, tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def hstack(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.nrows != other.nrows:
            raise InvalidInputError("hstack needs equal row counts")
        return Matrix._raw(self.field, tuple(r + s for r, s in zip(self.rows, other.rows)),
                           self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.ncols != other.ncols:
            raise InvalidInputError("vstack needs equal column counts")
        return Matrix._raw(self.field, self.rows + other.rows, self.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)


def _code(field: Field, x) -> int:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise FieldMismatchError(f"element of {x.field} placed in matrix over {field}")
        return x.value
    if isinstance(x, str):
        return field.parse_code(x)
    x = int(x)
    if field.degree == 1:
        return x % field.q
    if not 0 <= x < field.size:
        raise InvalidInputError(f"code {x} out of range for {field}")
    return x


# -- elimination core ---------------------------------------------------------

def _rref_rows(field: Field, rows: Sequence[Sequence[int]], ncols: int,
               pivot_limit: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; pivots searched in the first ``pivot_limit`` columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    limit = ncols if pivot_limit is None else pivot_limit
    r = 0
    nrows = len(m)
    if isinstance(field, PrimeField) or field.degree == 1:
        q = field.q
        for c in range(limit):
            if r == nrows:
                break
            p = next((i for i in range(r, nrows) if m[i][c]), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            row = m[r]
            if row[c] != 1:
                inv = pow(row[c], q - 2, q)
                row = m[r] = [x * inv % q for x in row]
            for i in range(nrows):
                if i != r:
                    f = m[i][c]
                    if f:
                        m[i] = [(x - f * y) % q for x, y in zip(m[i], row)]
            pivots.append(c)
            r += 1
        return m, pivots
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    for c in range(limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        s = inv(m[r][c])
        row = m[r] = [mul(s, x) for x in m[r]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    nf = neg(f)
                    m[i] = [add(x, mul(nf, y)) for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (zero rows kept at the bottom) and 0-based pivot columns."""
    rows, pivots = _rref_rows(M.field, M.rows, M.ncols)
    return Matrix._raw(M.field, tuple(tuple(r) for r in rows), M.ncols), pivots


def rank(M: Matrix) -> int:
    return len(_rref_rows(M.field, M.rows, M.ncols)[1])


def det(M: Matrix) -> int:
    """Determinant as an element code."""
    if M.nrows != M.ncols:
        raise InvalidInputError(f"determinant of non-square {M.shape} matrix")
    return _det_rows(M.field, [list(r) for r in M.rows])


def _det_rows(field: Field, m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return field.sub(field.mul(m[0][0], m[1][1]), field.mul(m[0][1], m[1][0]))
    result = 1
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = neg(result)
        pivot = m[c][c]
        result = mul(result, pivot)
        s = inv(pivot)
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                nf = neg(mul(f, s))
                m[i] = [add(x, mul(nf, y)) for x, y in zip(m[i], m[c])]
    return result


def minor(M: Matrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> int:
    """Determinant of the submatrix on 1-based, strictly increasing row and column index sets."""
    for idx, bound, what in ((row_idx, M.nrows, "row"), (col_idx, M.ncols, "column")):
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise InvalidInputError(f"{what} indices {tuple(idx)} not strictly increasing")
        if idx and (idx[0] < 1 or idx[-1] > bound):
            raise InvalidInputError(f"{what} indices {tuple(idx)} out of range 1..{bound}")
    if len(row_idx) != len(col_idx):
        raise InvalidInputError("minor needs a square selection")
    return _det_rows(M.field, [[M.rows[i - 1][j - 1] for j in col_idx] for i in row_idx])


def _kernel_from_rref(field: Field, rows: list[list[int]], pivots: list[int], ncols: int) -> list[Vector]:
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = field.neg(rows[r][f])
        basis.append(tuple(v))
    return basis


def kernel(M: Matrix) -> list[Vector]:
    """Basis of the right null space {v : M v = 0}, one vector per free column."""
    rows, pivots = _rref_rows(M.field, M.rows, M.ncols)
    return _kernel_from_rref(M.field, rows, pivots, M.ncols)


def kernel_matrix(M: Matrix) -> Matrix:
    return Matrix._raw(M.field, tuple(kernel(M)), M.ncols)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    A._same_field(B)
    if A.ncols != B.nrows:
        raise InvalidInputError(f"cannot multiply {A.shape} by {B.shape}")
    f = A.field
    cols = list(zip(*B.rows)) if B.nrows else [() for _ in range(B.ncols)]
    if f.degree == 1:
        q = f.q
        out = tuple(tuple(sum(a * b for a, b in zip(r, c)) % q for c in cols) for r in A.rows)
    else:
        add, mul = f.add, f.mul
        out = []
        for r in A.rows:
            row = []
            for c in cols:
                s = 0
                for a, b in zip(r, c):
                    if a and b:
                        s = add(s, mul(a, b))
                row.append(s)
            out.append(tuple(row))
        out = tuple(out)
    return Matrix._raw(f, out, B.ncols)


def vec_mat(field: Field, v: Sequence[int], M: Matrix) -> Vector:
    """Row vector times matrix."""
    return mat_mul(Matrix._raw(field, (tuple(v),), len(v)), M).rows[0]


def inverse(M: Matrix) -> Matrix:
    if M.nrows != M.ncols:
        raise InvalidInputError(f"inverse of non-square {M.shape} matrix")
    n = M.nrows
    aug = [r + tuple(int(i == j) for j in range(n)) for i, r in enumerate(M.rows)]
    rows, pivots = _rref_rows(M.field, aug, 2 * n, pivot_limit=n)
    if len(pivots) < n:
        raise InvalidInputError("matrix is singular")
    return Matrix._raw(M.field, tuple(tuple(r[n:]) for r in rows), n)


@dataclass(frozen=True)
class AffineSolutionSet:
    """particular + span(basis); ``particular`` is None when the system is inconsistent."""

    field: Field
    nvars: int
    particular: Vector | None
    basis: tuple[Vector, ...]

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def dimension(self) -> int:
        return -1 if self.is_empty else len(self.basis)

    def __len__(self) -> int:
        return 0 if self.is_empty else self.field.size ** len(self.basis)

    def __iter__(self) -> Iterator[Vector]:
        """Lazily enumerate solutions, lexicographic over free-variable assignments."""
        if self.is_empty:
            return
        f = self.field
        for coeffs in itertools.product(range(f.size), repeat=len(self.basis)):
            v = list(self.particular)
            for c, b in zip(coeffs, self.basis):
                if c:
                    for j, x in enumerate(b):
                        if x:
                            v[j] = f.add(v[j], f.mul(c, x))
            yield tuple(v)

    def __contains__(self, v) -> bool:
        if self.is_empty:
            return False
        f = self.field
        diff = [f.sub(a, b) for a, b in zip(v, self.particular)]
        if not self.basis:
            return not any(diff)
        B = Matrix._raw(f, self.basis, self.nvars)
        return rank(B.vstack(Matrix._raw(f, (tuple(diff),), self.nvars))) == len(self.basis)


def solve_affine(A: Matrix, b: Sequence[int]) -> AffineSolutionSet:
    """All x with A x = b."""
    if len(b) != A.nrows:
        raise InvalidInputError(f"right-hand side has length {len(b)}, expected {A.nrows}")
    f = A.field
    n = A.ncols
    aug = [r + (_code(f, x),) for r, x in zip(A.rows, b)]
    rows, pivots = _rref_rows(f, aug, n + 1)
    if pivots and pivots[-1] == n:
        return AffineSolutionSet(f, n, None, ())
    part = [0] * n
    for r, p in enumerate(pivots):
        part[p] = rows[r][n]
    basis = _kernel_from_rref(f, [r[:n] for r in rows], pivots, n)
    return AffineSolutionSet(f, n, tuple(part), tuple(basis))
