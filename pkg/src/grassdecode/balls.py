"""Balls B^k_{S,tau}(R) and B^k_{I,t}(R) inside G_q(k, n) around an arbitrary subspace R.

Two descriptions are provided:

* linear equations in Plücker coordinates (forbidden minors of the
  standard ball, transported to R through the compound matrix of A^{-1});
* a rational parametrization rs([V1 | X Y] A), with rank(X Y) bounded by
  the inner rank nu (subspace metric) or omega (injection metric).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Iterator, Sequence

from .errors import InvalidInputError
from .fields import PrimeField
from .linalg import Matrix, inverse, mat_mul, rank
from .pluecker import MultiIndex, PlueckerVector, bruhat_leq, multiindices, phi_bar
from .subspace import Subspace, distance, standard_subspace

METRICS = ("subspace", "injection")


class BallOutcome(str, Enum):
    EQUATIONS = "equations"
    EVERYTHING = "everything"
    EMPTY = "empty"


class RadiusOutOfRange(InvalidInputError):
    """The radius makes the ball trivial; ``outcome`` says which way."""

    def __init__(self, outcome: BallOutcome):
        self.outcome = outcome
        super().__init__(f"radius outside the equation range: ball is {outcome.value}")


def _check_metric(metric: str) -> None:
    if metric not in METRICS:
        raise InvalidInputError(f"unknown metric {metric!r}; expected one of {METRICS}")


@dataclass(frozen=True)
class BallSpec:
    center: Subspace
    k: int
    metric: str
    radius: int

    def __post_init__(self):
        _check_metric(self.metric)
        if self.radius < 0:
            raise InvalidInputError("radius must be non-negative")
        if not 0 <= self.k <= self.center.n:
            raise InvalidInputError(f"target dimension {self.k} outside 0..{self.center.n}")


def effective_radius(metric: str, radius: int, k: int, k_center: int) -> int:
    """Largest radius <= ``radius`` attainable by a distance; the ball is unchanged.

    Subspace distances between dimensions k and k' have the parity of k + k'.
    """
    _check_metric(metric)
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    if metric == "subspace" and (k + k_center - radius) % 2:
        return radius - 1
    return radius


def ball_outcome(metric: str, radius: int, k: int, k_center: int, n: int) -> BallOutcome:
    r = effective_radius(metric, radius, k, k_center)
    if r < abs(k - k_center):
        return BallOutcome.EMPTY
    if metric == "subspace":
        full = min(k + k_center, 2 * n - k - k_center)
    else:
        full = min(max(k, k_center), n - min(k, k_center))
    return BallOutcome.EVERYTHING if r >= full else BallOutcome.EQUATIONS


def bound_tuple(metric: str, k: int, k_center: int, n: int, radius: int) -> MultiIndex:
    """The Bruhat bound whose complement indexes the vanishing minors of the standard ball."""
    outcome = ball_outcome(metric, radius, k, k_center, n)
    if outcome is not BallOutcome.EQUATIONS:
        raise RadiusOutOfRange(outcome)
    r = effective_radius(metric, radius, k, k_center)
    if metric == "subspace":
        first = range((k_center - k + r) // 2 + 1, k_center + 1)
        second = range(n - (k - k_center + r) // 2 + 1, n + 1)
    else:
        m = max(k, k_center)
        first = range(k_center - m + r + 1, k_center + 1)
        second = range(n - k + m - r + 1, n + 1)
    return tuple(first) + tuple(second)


def forbidden_indices(metric: str, k: int, k_center: int, n: int, radius: int) -> list[MultiIndex]:
    """Multi-indices I with I not <= bound tuple; raises RadiusOutOfRange for trivial balls."""
    bound = bound_tuple(metric, k, k_center, n, radius)
    return [I for I in multiindices(n, k) if not bruhat_leq(I, bound)]


def theta_count(metric: str, k: int, k_center: int, n: int, radius: int) -> int:
    """Upper bound on the number of linear equations describing the ball."""
    outcome = ball_outcome(metric, radius, k, k_center, n)
    if outcome is BallOutcome.EMPTY:
        raise RadiusOutOfRange(outcome)
    r = effective_radius(metric, radius, k, k_center)
    if metric == "subspace":
        top = (k + k_center - r) // 2 - 1
    else:
        top = max(k, k_center) - r - 1
    return sum(comb(n - k_center, k - l) * comb(k_center, l) for l in range(top + 1))


def standardizing_transform(R: Subspace) -> Matrix:
    """Invertible A with U_0^{k'} A = R: RREF rows on top, unit vectors off the pivots below."""
    pivots = set(R.pivots)
    rows = list(R.rows)
    for j in range(R.n):
        if j not in pivots:
            rows.append(tuple(int(i == j) for i in range(R.n)))
    return Matrix(R.field, rows, ncols=R.n)


def is_standard(R: Subspace) -> bool:
    return R == standard_subspace(R.field, R.k, R.n)


@dataclass(frozen=True)
class LinearBallEquations:
    """Rows sum_J coef[J] x_J = 0, one per forbidden multi-index.

    ``outcome`` is EQUATIONS unless the radius makes the ball trivial; an
    EVERYTHING ball has no rows and an EMPTY ball has no points at all.
    """

    field: PrimeField
    n: int
    k: int
    outcome: BallOutcome
    forbidden: tuple[MultiIndex, ...] = ()
    rows: tuple[tuple[int, ...], ...] = ()

    @property
    def variables(self) -> tuple[MultiIndex, ...]:
        return multiindices(self.n, self.k)

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.rows, ncols=comb(self.n, self.k))

    def satisfied_by(self, x: PlueckerVector | Sequence[int]) -> bool:
        if self.outcome is BallOutcome.EMPTY:
            return False
        coords = x.coords if isinstance(x, PlueckerVector) else x
        q = self.field.q
        return all(sum(a * b for a, b in zip(row, coords)) % q == 0 for row in self.rows)


def ball_equations(R: Subspace, metric: str, radius: int, k: int) -> LinearBallEquations:
    """Linear Plücker equations of B^k(R) for either metric."""
    n = R.n
    outcome = ball_outcome(metric, radius, k, R.k, n)
    if outcome is not BallOutcome.EQUATIONS:
        return LinearBallEquations(R.field, n, k, outcome)
    forbidden = forbidden_indices(metric, k, R.k, n, radius)
    variables = multiindices(n, k)
    if is_standard(R):
        pos = {I: i for i, I in enumerate(variables)}
        rows = tuple(tuple(int(j == pos[I]) for j in range(len(variables))) for I in forbidden)
    else:
        Phi = phi_bar(inverse(standardizing_transform(R)), k)
        cols = list(zip(*Phi.rows))
        pos = {I: i for i, I in enumerate(variables)}
        rows = tuple(cols[pos[I]] for I in forbidden)
    return LinearBallEquations(R.field, n, k, outcome, tuple(forbidden), rows)


def ball_membership(V: Subspace, spec: BallSpec) -> bool:
    if V.k != spec.k:
        raise InvalidInputError(f"subspace has dimension {V.k}, ball lives in dimension {spec.k}")
    return distance(spec.center, V, spec.metric) <= spec.radius


# -- rational parametrization -------------------------------------------------

@dataclass(frozen=True)
class RationalBallParam:
    """Blocks of A = [[R1, R2], [R3, R4]] and the inner rank bounding rank(X Y).

    ``inner`` is nu = (k - k' + tau)/2 for the subspace metric and
    omega = min(0, k - k') + t for the injection metric, capped at
    min(k, n - k'); a negative value means the ball is empty.
    """

    center: Subspace
    k: int
    metric: str
    radius: int
    transform: Matrix
    inner: int

    @property
    def k_center(self) -> int:
        return self.center.k

    @property
    def n(self) -> int:
        return self.center.n

    @property
    def field(self) -> PrimeField:
        return self.center.field

    @property
    def is_empty(self) -> bool:
        return self.inner < 0

    @property
    def top(self) -> Matrix:
        """[R1 R2]: the first k' rows of the transform."""
        return self.transform.submatrix(range(self.k_center), range(self.n))

    @property
    def bottom(self) -> Matrix:
        """[R3 R4]: the remaining n - k' rows."""
        return self.transform.submatrix(range(self.k_center, self.n), range(self.n))

    def blocks(self) -> tuple[Matrix, Matrix, Matrix, Matrix]:
        kc, n = self.k_center, self.n
        A = self.transform
        return (A.submatrix(range(kc), range(kc)), A.submatrix(range(kc), range(kc, n)),
                A.submatrix(range(kc, n), range(kc)), A.submatrix(range(kc, n), range(kc, n)))

    @property
    def simplified(self) -> bool:
        """R1 = I, R3 = 0, R4 = I: the ball is rs[V1 | V1 R2~ + V2]."""
        return self.center.pivots == tuple(range(self.k_center))

    @property
    def shapes(self) -> dict[str, tuple[int, int]]:
        m = max(self.inner, 0)
        return {"V1": (self.k, self.k_center), "X": (self.k, m), "Y": (m, self.n - self.k_center)}

    def unknown_count(self) -> int:
        return self.k * self.k_center + (self.n - self.k_center + self.k) * max(self.inner, 0)


def inner_rank(metric: str, radius: int, k: int, k_center: int, n: int) -> int:
    r = effective_radius(metric, radius, k, k_center)
    if metric == "subspace":
        raw = (k - k_center + r) // 2 if r >= k_center - k else -1
    else:
        raw = min(0, k - k_center) + r
    return min(raw, k, n - k_center)


def rational_param(R: Subspace, metric: str, radius: int, k: int) -> RationalBallParam:
    _check_metric(metric)
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    return RationalBallParam(R, k, metric, radius, standardizing_transform(R),
                             inner_rank(metric, radius, k, R.k, R.n))


def _assemble_rows(p: RationalBallParam, V1: Matrix, V2: Matrix) -> Matrix:
    left = V1.hstack(V2) if p.k_center and p.n - p.k_center else (V1 if p.k_center else V2)
    return mat_mul(left, p.transform)


def assemble_candidate(p: RationalBallParam, V1: Matrix, X: Matrix, Y: Matrix) -> Subspace:
    """rs([V1 | X Y] A); raises on rank-deficient assemblies."""
    if p.is_empty:
        raise InvalidInputError("the ball is empty")
    shapes = p.shapes
    for name, M in (("V1", V1), ("X", X), ("Y", Y)):
        if M.shape != shapes[name]:
            raise InvalidInputError(f"{name} has shape {M.shape}, expected {shapes[name]}")
    V2 = mat_mul(X, Y) if p.inner else Matrix.zeros(p.field, p.k, p.n - p.k_center)
    U = _assemble_rows(p, V1, V2)
    if rank(U) < p.k:
        raise InvalidInputError("assembled matrix is rank deficient")
    from .subspace import span
    return span(U)


def _all_matrices(field: PrimeField, r: int, c: int) -> Iterator[Matrix]:
    for vals in itertools.product(range(field.q), repeat=r * c):
        yield Matrix(field, [vals[i * c:(i + 1) * c] for i in range(r)], ncols=c)


def low_rank_products(field: PrimeField, k: int, m: int, inner: int) -> set[tuple[tuple[int, ...], ...]]:
    """All k x m matrices of rank <= inner, i.e. every product X Y with X k x inner, Y inner x m.

    Each rank-r matrix is built once as X Y with Y the RREF basis of its row
    space and X of full column rank.
    """
    from .subspace import enumerate_grassmannian

    out = {tuple((0,) * m for _ in range(k))}
    for r in range(1, min(inner, k, m) + 1):
        Xs = [X for X in _all_matrices(field, k, r) if rank(X) == r]
        for W in enumerate_grassmannian(field, r, m):
            Y = W.basis
            for X in Xs:
                out.add(mat_mul(X, Y).rows)
    return out


def enumerate_rational_ball(p: RationalBallParam) -> set[Subspace]:
    """Every full-rank assembly rs([V1 | X Y] A), deduplicated by RREF."""
    from .subspace import span

    if p.is_empty:
        return set()
    f = p.field
    m = p.n - p.k_center
    products = [Matrix(f, rows, ncols=m) for rows in low_rank_products(f, p.k, m, p.inner)]
    out = set()
    for V1 in _all_matrices(f, p.k, p.k_center):
        for V2 in products:
            U = _assemble_rows(p, V1, V2)
            S = span(U)
            if S.k == p.k:
                out.add(S)
    return out
