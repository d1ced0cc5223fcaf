"""Plücker embedding of G_q(k, n), its inverse, shuffle relations and the compound matrix.

Multi-indices are strictly increasing tuples of 1-based column indices;
coordinate vectors are ordered lexicographically by multi-index.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import InvalidInputError
from .fields import PrimeField
from .linalg import Matrix, _det_rows, inverse
from .subspace import Subspace, enumerate_grassmannian, span

MultiIndex = tuple[int, ...]


@lru_cache(maxsize=None)
def multiindices(n: int, k: int) -> tuple[MultiIndex, ...]:
    """All k-subsets of 1..n in lexicographic order."""
    if not 0 <= k <= n:
        raise InvalidInputError(f"need 0 <= k <= n, got k={k}, n={n}")
    return tuple(itertools.combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def index_map(n: int, k: int) -> dict[MultiIndex, int]:
    return {I: pos for pos, I in enumerate(multiindices(n, k))}


def check_multiindex(I: Sequence[int], n: int) -> MultiIndex:
    I = tuple(I)
    if any(b <= a for a, b in zip(I, I[1:])) or (I and (I[0] < 1 or I[-1] > n)):
        raise InvalidInputError(f"{I} is not a strictly increasing multi-index in 1..{n}")
    return I


def bruhat_leq(I: Sequence[int], J: Sequence[int]) -> bool:
    """Componentwise order: i_l <= j_l for all l."""
    if len(I) != len(J):
        raise InvalidInputError("Bruhat order compares multi-indices of equal length")
    return all(a <= b for a, b in zip(I, J))


def sort_sign(seq: Sequence[int]) -> tuple[int, MultiIndex]:
    """(sign of the sorting permutation, sorted tuple); sign 0 on repeated entries."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


@dataclass(frozen=True)
class PlueckerVector:
    """Normalized projective coordinates: the lex-first nonzero entry is 1."""

    field: PrimeField
    n: int
    k: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != comb(self.n, self.k):
            raise InvalidInputError(f"expected C({self.n},{self.k}) coordinates, got {len(self.coords)}")
        lead = next((x for x in self.coords if x), None)
        if lead is None:
            raise InvalidInputError("the zero vector is not a projective point")
        if lead != 1:
            raise InvalidInputError("Plücker vector is not normalized; use PlueckerVector.normalized")

    @classmethod
    def normalized(cls, field: PrimeField, n: int, k: int, coords: Sequence[int]) -> "PlueckerVector":
        coords = tuple(int(x) % field.q for x in coords)
        lead = next((x for x in coords if x), None)
        if lead is None:
            raise InvalidInputError("the zero vector is not a projective point")
        s = field.inv(lead)
        return cls(field, n, k, tuple(field.mul(s, x) for x in coords))

    def __getitem__(self, I: Sequence[int]) -> int:
        return self.coords[index_map(self.n, self.k)[tuple(I)]]

    def as_dict(self) -> dict[MultiIndex, int]:
        return dict(zip(multiindices(self.n, self.k), self.coords))

    def __str__(self) -> str:
        return ":".join(self.field.format(x) for x in self.coords)


def plucker_coordinates(M: Matrix) -> tuple[int, ...]:
    """All maximal minors of a k x n matrix, unnormalized, in lex order."""
    f = M.field
    rows = M.rows
    out = []
    for I in multiindices(M.ncols, M.nrows):
        cols = [i - 1 for i in I]
        out.append(_det_rows(f, [[r[c] for c in cols] for r in rows]))
    return tuple(out)


def plucker_embed(U: Subspace) -> PlueckerVector:
    if U.k == 0:
        raise InvalidInputError("the zero subspace has no Plücker vector")
    return PlueckerVector.normalized(U.field, U.n, U.k, plucker_coordinates(U.basis))


@dataclass(frozen=True)
class ShuffleRelation:
    """Quadratic form sum(coef * x_left * x_right); coefficients are field codes."""

    terms: tuple[tuple[int, MultiIndex, MultiIndex], ...]

    def evaluate(self, field: PrimeField, x) -> int:
        """Value at a PlueckerVector or any mapping from multi-index to code."""
        return sum(c * x[a] * x[b] for c, a, b in self.terms) % field.q

    def format(self, field: PrimeField) -> str:
        out = ""
        for c, a, b in self.terms:
            sym = f"x{''.join(map(str, a))}*x{''.join(map(str, b))}"
            if c == field.q - 1 and field.q > 2:
                out += f" - {sym}" if out else f"-{sym}"
            else:
                term = sym if c == 1 else f"{c}*{sym}"
                out += f" + {term}" if out else term
        return out + " = 0"


def _raw_relations(n: int, k: int):
    """Integer-coefficient shuffle sums, before reduction into the field."""
    for I in itertools.combinations(range(1, n + 1), k + 1):
        for J in itertools.combinations(range(1, n + 1), k - 1):
            acc: dict[tuple[MultiIndex, MultiIndex], int] = {}
            for pos, j in enumerate(I):
                s, right = sort_sign((j,) + J)
                if not s:
                    continue
                left = I[:pos] + I[pos + 1:]
                key = (left, right) if left <= right else (right, left)
                acc[key] = acc.get(key, 0) + (-1) ** pos * s
            yield acc


@lru_cache(maxsize=None)
def _shuffle_cached(n: int, k: int, q: int) -> tuple[ShuffleRelation, ...]:
    seen = set()
    out = []
    for acc in _raw_relations(n, k):
        terms = sorted((key, c % q) for key, c in acc.items() if c % q)
        if not terms:
            continue
        s = pow(terms[0][1], q - 2, q)
        canon = tuple((c * s % q, a, b) for (a, b), c in terms)
        if canon not in seen:
            seen.add(canon)
            out.append(ShuffleRelation(canon))
    return tuple(out)


def shuffle_relations(n: int, k: int, field: PrimeField) -> list[ShuffleRelation]:
    """Deduplicated, nontrivial shuffle relations cutting out G_q(k, n)."""
    if not 1 <= k <= n:
        raise InvalidInputError(f"need 1 <= k <= n, got k={k}, n={n}")
    return list(_shuffle_cached(n, k, field.q))


def satisfies_shuffle(x: PlueckerVector) -> bool:
    if x.k == 0:
        return True
    get = x.as_dict().__getitem__
    q = x.field.q
    return all(sum(c * get(a) * get(b) for c, a, b in rel.terms) % q == 0
               for rel in _shuffle_cached(x.n, x.k, q))


def plucker_inverse(x: PlueckerVector) -> Subspace:
    """The subspace whose Plücker vector is x."""
    if not satisfies_shuffle(x):
        raise InvalidInputError(f"{x} violates the shuffle relations; not a point of G({x.k},{x.n})")
    field, n, k = x.field, x.n, x.k
    coords = x.as_dict()
    I = next(I for I, v in coords.items() if v)
    rows = []
    for r in range(k):
        row = []
        for j in range(1, n + 1):
            s, J = sort_sign(I[:r] + (j,) + I[r + 1:])
            row.append(s * coords[J] % field.q if s else 0)
        rows.append(row)
    U = span(Matrix(field, rows, ncols=n))
    if U.k == k and plucker_embed(U) == x:
        return U
    # defensive fallback; the construction above is exact
    for V in enumerate_grassmannian(field, k, n):
        if plucker_embed(V) == x:
            return V
    raise InvalidInputError(f"no subspace found for {x}")


def phi_bar(A: Matrix, k: int) -> Matrix:
    """Compound matrix: entry (I, J) is det A[rows I, cols J] over lex-ordered k-subsets."""
    if A.nrows != A.ncols:
        raise InvalidInputError("phi_bar needs a square matrix")
    inverse(A)  # raises on singular input
    idx = multiindices(A.nrows, k)
    f = A.field
    rows = A.rows
    out = []
    for I in idx:
        sel = [rows[i - 1] for i in I]
        out.append(tuple(_det_rows(f, [[r[j - 1] for j in J] for r in sel]) for J in idx))
    return Matrix(f, out, ncols=len(idx))
