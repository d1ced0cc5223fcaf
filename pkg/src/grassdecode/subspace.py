"""Points of the Grassmannian G_q(k, n), both metrics, duals and the GL_n action."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceededError, InvalidInputError
from .fields import PrimeField
from .linalg import Matrix, inverse, kernel, mat_mul, rank, rref

DEFAULT_ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n, stored by the nonzero rows of its RREF basis.

    Equality and hashing go through the RREF, so two row-equivalent
    matrices give equal subspaces.
    """

    field: PrimeField
    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        return Matrix(self.field, self.rows, ncols=self.n)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    @classmethod
    def zero(cls, field: PrimeField, n: int) -> "Subspace":
        return cls(field, n, ())

    def __str__(self) -> str:
        return "rs[" + ", ".join("".join(str(x) for x in r) for r in self.rows) + "]"

    def sort_key(self) -> tuple:
        return (self.k, self.rows)


def _from_matrix(M: Matrix) -> Subspace:
    R, pivots = rref(M)
    return Subspace(M.field, M.ncols, R.rows[: len(pivots)])


def subspace_from_rows(M: Matrix) -> Subspace:
    """Row space of ``M`` in canonical RREF form."""
    if M.field.degree != 1:
        raise InvalidInputError("subspaces live over a prime field")
    S = _from_matrix(M)
    if S.k == 0:
        raise InvalidInputError("zero matrix does not span a nonzero subspace")
    return S


def span(M: Matrix) -> Subspace:
    """Like :func:`subspace_from_rows` but allows the zero subspace."""
    return _from_matrix(M)


def standard_subspace(field: PrimeField, k: int, n: int) -> Subspace:
    """U_0^k = rs[I_k | 0]."""
    return Subspace(field, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(k)))


def _check_ambient(U: Subspace, V: Subspace) -> None:
    if U.n != V.n or U.field != V.field:
        raise InvalidInputError(f"ambient mismatch: F_{U.field.q}^{U.n} vs F_{V.field.q}^{V.n}")


def intersection_dim(U: Subspace, V: Subspace) -> int:
    _check_ambient(U, V)
    if not U.k or not V.k:
        return 0
    return U.k + V.k - rank(Matrix(U.field, U.rows + V.rows, ncols=U.n))


def d_subspace(U: Subspace, V: Subspace) -> int:
    return U.k + V.k - 2 * intersection_dim(U, V)


def d_injection(U: Subspace, V: Subspace) -> int:
    return max(U.k, V.k) - intersection_dim(U, V)


def distance(U: Subspace, V: Subspace, metric: str) -> int:
    if metric == "subspace":
        return d_subspace(U, V)
    if metric == "injection":
        return d_injection(U, V)
    raise InvalidInputError(f"unknown metric {metric!r}")


def intersection(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V computed as the dual of U^⊥ + V^⊥."""
    _check_ambient(U, V)
    return dual(span(Matrix(U.field, dual(U).rows + dual(V).rows, ncols=U.n)))


def sum_space(U: Subspace, V: Subspace) -> Subspace:
    _check_ambient(U, V)
    return span(Matrix(U.field, U.rows + V.rows, ncols=U.n))


def dual(U: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    if not U.k:
        return standard_subspace(U.field, U.n, U.n)
    return span(Matrix(U.field, kernel(U.basis), ncols=U.n))


def act(U: Subspace, A: Matrix) -> Subspace:
    """rs(U) . A = rs(U A) for invertible A."""
    if A.nrows != U.n or A.ncols != U.n:
        raise InvalidInputError(f"expected an {U.n}x{U.n} matrix")
    inverse(A)  # raises on singular input
    if not U.k:
        return U
    return span(mat_mul(U.basis, A))


def contains(U: Subspace, V: Subspace) -> bool:
    """Whether V is a subspace of U."""
    return intersection_dim(U, V) == V.k


def gaussian_binomial(a: int, b: int, q: int) -> int:
    """Number of b-dimensional subspaces of F_q^a."""
    if not 0 <= b <= a:
        raise InvalidInputError(f"Gaussian binomial needs 0 <= b <= a, got a={a}, b={b}")
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (b - i) - 1
    return num // den


def enumerate_grassmannian(field: PrimeField, k: int, n: int,
                           budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[Subspace]:
    """Every point of G_q(k, n) once, ordered lexicographically by RREF rows."""
    if not 0 <= k <= n:
        raise InvalidInputError(f"need 0 <= k <= n, got k={k}, n={n}")
    count = gaussian_binomial(n, k, field.q)
    if count > budget:
        raise BudgetExceededError(f"G_{field.q}({k},{n})", count, budget)
    return iter(sorted(_rref_forms(field, k, n), key=lambda S: S.rows))


def _rref_forms(field: PrimeField, k: int, n: int) -> Iterator[Subspace]:
    q = field.q
    for pivots in itertools.combinations(range(n), k):
        pset = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pset]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            yield Subspace(field, n, tuple(tuple(r) for r in rows))


def enumerate_projective_space(field: PrimeField, n: int, dims=None,
                               budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[Subspace]:
    """All subspaces of F_q^n (optionally only the given dimensions), by dimension."""
    for k in (range(n + 1) if dims is None else dims):
        yield from enumerate_grassmannian(field, k, n, budget)
