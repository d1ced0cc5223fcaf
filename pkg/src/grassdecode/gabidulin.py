"""Gabidulin codes, lifting, and the block codes C^L and C^p derived from a rank-metric code."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterator, Sequence

from .errors import BudgetExceededError, InvalidInputError
from .fields import ExtField, FieldElement, PrimeField, frobenius
from .linalg import Matrix, kernel, rank, rref
from .pluecker import MultiIndex, index_map, multiindices, plucker_embed
from .subspace import Subspace, d_subspace

DEFAULT_CODE_BUDGET = 2**16


def rank_distance(A: Matrix, B: Matrix) -> int:
    if A.shape != B.shape:
        raise InvalidInputError(f"shape mismatch: {A.shape} vs {B.shape}")
    return rank(A - B)


def lift(A: Matrix) -> Subspace:
    """rs[I_k | A]; already in RREF, so no elimination is needed."""
    k = A.nrows
    rows = tuple(tuple(int(i == j) for j in range(k)) + r for i, r in enumerate(A.rows))
    return Subspace(A.field, k + A.ncols, rows)


def cl_vector(A: Matrix) -> tuple[int, ...]:
    """Entries of A row by row from the bottom row up, each row left to right."""
    return tuple(x for row in reversed(A.rows) for x in row)


def cl_unvector(field: PrimeField, k: int, ell: int, v: Sequence[int]) -> Matrix:
    rows = [tuple(v[i * ell:(i + 1) * ell]) for i in range(k)]
    return Matrix(field, list(reversed(rows)), ncols=ell)


def qualifying_indices(n: int, k: int) -> tuple[MultiIndex, ...]:
    """Multi-indices meeting {1..k} in exactly k-1 elements, lex order."""
    return tuple(I for I in multiindices(n, k) if sum(1 for i in I if i <= k) == k - 1)


def signed_entry(A: Matrix, I: MultiIndex) -> int:
    """(-1)^{k-s} A[s, t-k] for I = [k] minus {s} plus {t}; equals the Plücker coordinate of lift(A)."""
    k = A.nrows
    s = next(i for i in range(1, k + 1) if i not in I)
    t = I[-1]
    x = A[s - 1, t - k - 1]
    return x if (k - s) % 2 == 0 else A.field.neg(x)


class RankMetricCode:
    """An F_q-linear code of k x ell matrices, given by a basis."""

    def __init__(self, field: PrimeField, k: int, ell: int, basis: Sequence[Matrix]):
        if field.degree != 1:
            raise InvalidInputError("rank-metric codes are taken over a prime field")
        for B in basis:
            if B.shape != (k, ell) or B.field != field:
                raise InvalidInputError(f"basis matrix must be {k}x{ell} over F_{field.q}")
        self.field = field
        self.k = k
        self.ell = ell
        self.basis = tuple(basis)
        if self.basis and rank(Matrix(field, [cl_vector(B) for B in self.basis], ncols=k * ell)) < len(self.basis):
            raise InvalidInputError("basis matrices are linearly dependent")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.q ** self.dimension

    def combine(self, coeffs: Sequence[int]) -> Matrix:
        f = self.field
        acc = Matrix.zeros(f, self.k, self.ell)
        for c, B in zip(coeffs, self.basis):
            if c % f.q:
                acc = acc + B.scale(c)
        return acc

    def codewords(self, budget: int = DEFAULT_CODE_BUDGET) -> Iterator[Matrix]:
        if self.size > budget:
            raise BudgetExceededError("codeword enumeration", self.size, budget)
        for coeffs in itertools.product(range(self.q), repeat=self.dimension):
            yield self.combine(coeffs)

    @cached_property
    def _cl_rref(self) -> tuple[Matrix, list[int]]:
        return rref(Matrix(self.field, [cl_vector(B) for B in self.basis], ncols=self.k * self.ell))

    def contains(self, A: Matrix) -> bool:
        if A.shape != (self.k, self.ell) or A.field != self.field:
            return False
        R, piv = self._cl_rref
        stacked = Matrix(self.field, R.rows[: len(piv)] + (cl_vector(A),), ncols=self.k * self.ell)
        return rank(stacked) == len(piv)

    def min_rank_distance(self, budget: int = DEFAULT_CODE_BUDGET) -> int:
        """Minimum rank of a nonzero codeword (equal to the minimum distance by linearity)."""
        ranks = [rank(A) for A in self.codewords(budget) if not A.is_zero()]
        if not ranks:
            raise InvalidInputError("the zero code has no minimum distance")
        return min(ranks)


class GabidulinCode(RankMetricCode):
    """Gabidulin code of length k over F_{q^ell} with designed rank distance delta.

    Codewords c = m G, where G has rows g^{[0]}, ..., g^{[k-delta]} (Frobenius
    powers of the evaluation points g), written as k x ell matrices whose row j
    holds the coordinates of c_j in the basis 1, alpha, ..., alpha^(ell-1).
    """

    def __init__(self, q: int, ell: int, k: int, delta: int,
                 g: Sequence | None = None, modulus: Sequence[int] | None = None):
        if not 1 <= k <= ell:
            raise InvalidInputError(f"need 1 <= k <= ell, got k={k}, ell={ell}")
        if not 1 <= delta <= k:
            raise InvalidInputError(f"need 1 <= delta <= k, got delta={delta}")
        ext = ExtField(q, ell, modulus)
        self.ext = ext
        self.delta = delta
        if g is None:
            a = ext.alpha
            g = [a ** i for i in range(k)]
        g = tuple(ext.element(x) for x in g)
        if len(g) != k:
            raise InvalidInputError(f"expected {k} evaluation points, got {len(g)}")
        base = PrimeField(q)
        if rank(Matrix(base, [x.coeffs for x in g], ncols=ell)) < k:
            raise InvalidInputError("evaluation points are linearly dependent over the base field")
        self.g = g
        self.k = k
        self.ell = ell
        self.field = base
        basis = []
        for i in range(self.message_length):
            for j in range(ell):
                m = [ext.element(0)] * self.message_length
                m[i] = ext.alpha ** j
                basis.append(self.encode(m))
        super().__init__(base, k, ell, basis)

    @property
    def message_length(self) -> int:
        return self.k - self.delta + 1

    @cached_property
    def generator(self) -> tuple[tuple[FieldElement, ...], ...]:
        return tuple(tuple(frobenius(x, i) for x in self.g) for i in range(self.message_length))

    def generator_matrix(self) -> Matrix:
        return Matrix(self.ext, [[x.value for x in row] for row in self.generator], ncols=self.k)

    def encode_vector(self, m: Sequence) -> tuple[FieldElement, ...]:
        ext = self.ext
        m = [ext.element(x) for x in m]
        if len(m) != self.message_length:
            raise InvalidInputError(f"message has length {len(m)}, expected {self.message_length}")
        out = []
        for j in range(self.k):
            c = ext.element(0)
            for i, mi in enumerate(m):
                c = c + mi * self.generator[i][j]
            out.append(c)
        return tuple(out)

    def encode(self, m: Sequence) -> Matrix:
        return Matrix(self.field, [c.coeffs for c in self.encode_vector(m)], ncols=self.ell)

    def messages(self, budget: int = DEFAULT_CODE_BUDGET) -> Iterator[tuple[FieldElement, ...]]:
        if self.size > budget:
            raise BudgetExceededError("message enumeration", self.size, budget)
        ext = self.ext
        for vals in itertools.product(range(ext.size), repeat=self.message_length):
            yield tuple(FieldElement(ext, v) for v in vals)

    def descriptor(self) -> dict:
        return {"q": self.q, "ell": self.ell, "k": self.k, "delta": self.delta,
                "modulus": list(self.ext.modulus), "g": [str(x) for x in self.g]}

    @classmethod
    def from_descriptor(cls, d: dict) -> "GabidulinCode":
        try:
            return cls(int(d["q"]), int(d["ell"]), int(d["k"]), int(d["delta"]),
                       g=d.get("g"), modulus=d.get("modulus"))
        except KeyError as e:
            raise InvalidInputError(f"code descriptor is missing {e.args[0]!r}") from None


@dataclass(frozen=True)
class LiftedCode:
    """The constant-dimension code {lift(A) : A in inner}."""

    inner: RankMetricCode

    @property
    def field(self) -> PrimeField:
        return self.inner.field

    @property
    def k(self) -> int:
        return self.inner.k

    @property
    def n(self) -> int:
        return self.inner.k + self.inner.ell

    @property
    def size(self) -> int:
        return self.inner.size

    def codewords(self, budget: int = DEFAULT_CODE_BUDGET) -> Iterator[Subspace]:
        for A in self.inner.codewords(budget):
            yield lift(A)

    def contains(self, U: Subspace) -> bool:
        if U.n != self.n or U.k != self.k or U.pivots != tuple(range(self.k)):
            return False
        A = Matrix(self.field, [r[self.k:] for r in U.rows], ncols=self.inner.ell)
        return self.inner.contains(A)

    def min_distance(self, budget: int = DEFAULT_CODE_BUDGET) -> int:
        words = list(self.codewords(budget))
        return min(d_subspace(U, V) for U, V in itertools.combinations(words, 2))


@dataclass(frozen=True)
class BlockCodeView:
    """A linear block code over F_q with generator and parity-check matrices."""

    kind: str
    generator: Matrix
    parity_check: Matrix

    @property
    def length(self) -> int:
        return self.generator.ncols

    @property
    def dimension(self) -> int:
        return rank(self.generator)

    def codewords(self) -> Iterator[tuple[int, ...]]:
        f = self.generator.field
        for coeffs in itertools.product(range(f.q), repeat=self.generator.nrows):
            yield tuple(sum(c * r[j] for c, r in zip(coeffs, self.generator.rows)) % f.q
                        for j in range(self.length))

    def min_weight(self) -> int:
        return min(sum(1 for x in w if x) for w in self.codewords() if any(w))

    def is_codeword(self, v: Sequence[int]) -> bool:
        q = self.generator.field.q
        return all(sum(a * b for a, b in zip(h, v)) % q == 0 for h in self.parity_check.rows)


def _view(kind: str, field: PrimeField, rows: list[tuple[int, ...]], length: int) -> BlockCodeView:
    G = Matrix(field, rows, ncols=length)
    K = kernel(G)
    if K:
        H, piv = rref(Matrix(field, K, ncols=length))
        H = Matrix(field, H.rows[: len(piv)], ncols=length)
    else:
        H = Matrix.zeros(field, 0, length)
    return BlockCodeView(kind, G, H)


def block_code_CL(code: RankMetricCode) -> BlockCodeView:
    """C^L: codewords expanded by :func:`cl_vector`; parity check H^L."""
    return _view("CL", code.field, [cl_vector(B) for B in code.basis], code.k * code.ell)


def restricted_plucker(A: Matrix) -> tuple[int, ...]:
    """Plücker coordinates of lift(A) at the qualifying indices."""
    n, k = A.nrows + A.ncols, A.nrows
    x = plucker_embed(lift(A))
    pos = index_map(n, k)
    return tuple(x.coords[pos[I]] for I in qualifying_indices(n, k))


def block_code_Cp(code: RankMetricCode) -> BlockCodeView:
    """C^p: lifted codewords' Plücker vectors restricted to the qualifying indices; parity check H^p."""
    n, k = code.k + code.ell, code.k
    return _view("Cp", code.field, [restricted_plucker(B) for B in code.basis],
                 len(qualifying_indices(n, k)))


def extend_Hp(code: RankMetricCode) -> Matrix:
    """H^p with each column moved to the lex position of its qualifying index; zeros elsewhere."""
    n, k = code.k + code.ell, code.k
    Hp = block_code_Cp(code).parity_check
    pos = index_map(n, k)
    width = comb(n, k)
    rows = []
    for r in Hp.rows:
        row = [0] * width
        for I, x in zip(qualifying_indices(n, k), r):
            row[pos[I]] = x
        rows.append(tuple(row))
    return Matrix(code.field, rows, ncols=width)
