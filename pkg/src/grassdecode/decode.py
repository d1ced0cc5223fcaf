"""List decoders for lifted rank-metric codes, the brute-force oracle, and list-size bounds.

Two decoders are provided:

* ``list_decode_plucker`` solves a mixed linear/bilinear system in the
  Plücker coordinates: parity checks, ball equations, the pin x_{1..k} = 1,
  and the shuffle relations;
* ``list_decode_rational`` enumerates the low-rank factor X of the rational
  ball parametrization and solves linearly for the rest.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .balls import BallOutcome, ball_equations, rational_param
from .errors import BudgetExceededError, InvalidInputError
from .fields import PrimeField
from .gabidulin import DEFAULT_CODE_BUDGET, LiftedCode, block_code_CL, extend_Hp
from .linalg import AffineSolutionSet, Matrix, rref, solve_affine
from .pluecker import (MultiIndex, PlueckerVector, ShuffleRelation, index_map, multiindices,
                       plucker_inverse, shuffle_relations)
from .subspace import Subspace, distance, gaussian_binomial

__all__ = [
    "MixedSystem", "DecodeList", "BoundReport", "build_mixed_system", "solve_mixed",
    "oracle_list_decode", "list_decode_plucker", "list_decode_rational",
    "gaussian_binomial", "list_size_lower_bound", "METHODS",
]

METHODS = ("plucker", "rational", "oracle")
DEFAULT_BUDGET_BITS = 24


def _bits(q: int, count: int) -> float:
    return count * math.log2(q)


def _check_received(code: LiftedCode, R: Subspace) -> None:
    if R.n != code.n or R.field != code.field:
        raise InvalidInputError(
            f"received word lives in F_{R.field.q}^{R.n}, code in F_{code.field.q}^{code.n}")


@dataclass(frozen=True)
class MixedSystem:
    """Linear rows A x = b over lex-ordered Plücker variables, plus bilinear constraints.

    ``labels`` names the origin of each linear row: "parity", "ball" or "pin".
    """

    field: PrimeField
    n: int
    k: int
    A: Matrix
    b: tuple[int, ...]
    labels: tuple[str, ...]
    bilinear: tuple[ShuffleRelation, ...]
    outcome: BallOutcome = BallOutcome.EQUATIONS

    @property
    def variables(self) -> tuple[MultiIndex, ...]:
        return multiindices(self.n, self.k)

    def without_row(self, i: int) -> "MixedSystem":
        keep = [j for j in range(self.A.nrows) if j != i]
        A = Matrix(self.field, [self.A.rows[j] for j in keep], ncols=self.A.ncols)
        return MixedSystem(self.field, self.n, self.k, A, tuple(self.b[j] for j in keep),
                           tuple(self.labels[j] for j in keep), self.bilinear, self.outcome)

    def linear_equations(self) -> list[str]:
        """Rows rendered as 'x12 + x23 = 0' over F_q."""
        names = ["x" + "".join(map(str, I)) for I in self.variables]
        out = []
        for row, rhs in zip(self.A.rows, self.b):
            terms = [(names[j] if c == 1 else f"{c}*{names[j]}") for j, c in enumerate(row) if c]
            out.append(" + ".join(terms) + f" = {rhs}")
        return out

    def format(self) -> str:
        lines = [f"# variables: {' '.join('x' + ''.join(map(str, I)) for I in self.variables)}"]
        lines += [f"{lab}: {eq}" for lab, eq in zip(self.labels, self.linear_equations())]
        lines += [f"shuffle: {rel.format(self.field)}" for rel in self.bilinear]
        return "\n".join(lines)


def build_mixed_system(code: LiftedCode, R: Subspace, metric: str, radius: int) -> MixedSystem:
    _check_received(code, R)
    f, n, k = code.field, code.n, code.k
    width = len(multiindices(n, k))
    rows: list[tuple[int, ...]] = []
    labels: list[str] = []
    for h in extend_Hp(code.inner).rows:
        rows.append(h)
        labels.append("parity")
    eqs = ball_equations(R, metric, radius, k)
    for r in eqs.rows:
        rows.append(r)
        labels.append("ball")
    rows.append(tuple(int(j == 0) for j in range(width)))
    labels.append("pin")
    b = tuple(int(lab == "pin") for lab in labels)
    return MixedSystem(f, n, k, Matrix(f, rows, ncols=width), b, tuple(labels),
                       tuple(shuffle_relations(n, k, f)), eqs.outcome)


def solve_mixed(system: MixedSystem, budget_bits: float = DEFAULT_BUDGET_BITS) -> list[tuple[int, ...]]:
    """All assignments satisfying the linear rows and every bilinear constraint.

    Free variables left after elimination are enumerated over F_q in lex order.
    """
    if system.outcome is BallOutcome.EMPTY:
        return []
    sols = solve_affine(system.A, system.b)
    if sols.is_empty:
        return []
    free = len(sols.basis)
    if _bits(system.field.q, free) > budget_bits:
        raise BudgetExceededError(f"mixed system with {free} free variables",
                                  system.field.q ** free, int(2 ** budget_bits))
    pos = index_map(system.n, system.k)
    rels = [[(c, pos[a], pos[b]) for c, a, b in rel.terms] for rel in system.bilinear]
    q = system.field.q
    return [x for x in sols
            if all(sum(c * x[i] * x[j] for c, i, j in rel) % q == 0 for rel in rels)]


@dataclass(frozen=True)
class DecodeList:
    """Codewords within the radius of the received word, sorted by RREF rows.

    ``solutions`` keeps the raw solver output: full Plücker assignments for
    the Plücker decoder, flattened (X, Y) parameters for the rational one.
    """

    method: str
    metric: str
    radius: int
    codewords: tuple[Subspace, ...]
    solutions: tuple[tuple[int, ...], ...] = dc_field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.codewords)

    def as_set(self) -> frozenset[Subspace]:
        return frozenset(self.codewords)

    def to_json(self) -> dict:
        return {"method": self.method, "metric": self.metric, "radius": self.radius,
                "codewords": [[list(r) for r in U.rows] for U in self.codewords]}


def _sorted(words) -> tuple[Subspace, ...]:
    return tuple(sorted(set(words), key=lambda U: U.rows))


def oracle_list_decode(code: LiftedCode, R: Subspace, metric: str, radius: int,
                       budget: int = DEFAULT_CODE_BUDGET) -> DecodeList:
    """Ground truth: every codeword, filtered by direct distance."""
    _check_received(code, R)
    words = [U for U in code.codewords(budget) if distance(R, U, metric) <= radius]
    return DecodeList("oracle", metric, radius, _sorted(words))


def list_decode_plucker(code: LiftedCode, R: Subspace, metric: str, radius: int,
                        budget_bits: float = DEFAULT_BUDGET_BITS) -> DecodeList:
    system = build_mixed_system(code, R, metric, radius)
    sols = solve_mixed(system, budget_bits)
    words = [plucker_inverse(PlueckerVector(code.field, code.n, code.k, x)) for x in sols]
    return DecodeList("plucker", metric, radius, _sorted(words), tuple(sols))


def _rational_system(code: LiftedCode, p, fixed: Matrix, enumerate_x: bool, HL: Matrix):
    """Linear system in (V1, other factor) for one value of the enumerated factor.

    Returns (coefficient matrix, rhs, entry forms) where entry forms express each
    entry of the assembled k x n matrix U as a linear form in the unknowns.
    """
    f = code.field
    q = f.q
    k, n, kc = code.k, code.n, p.k_center
    m = n - kc
    nu = p.inner
    T = p.transform.rows
    top, bot = T[:kc], T[kc:]
    nv1 = k * kc
    nunk = nv1 + (nu * m if enumerate_x else k * nu)
    if enumerate_x:
        W = None
    else:
        # W = Y [R3 R4], so U = V1 [R1 R2] + X W
        W = [[sum(fixed.rows[a][c] * bot[c][j] for c in range(m)) % q for j in range(n)]
             for a in range(nu)]
    forms = []
    for i in range(k):
        row_forms = []
        for j in range(n):
            coef = [0] * nunk
            for l in range(kc):
                coef[i * kc + l] = top[l][j]
            if enumerate_x:
                for a in range(nu):
                    x = fixed.rows[i][a]
                    if x:
                        for c in range(m):
                            coef[nv1 + a * m + c] = x * bot[c][j] % q
            else:
                for a in range(nu):
                    coef[nv1 + i * nu + a] = W[a][j]
            row_forms.append(coef)
        forms.append(row_forms)
    ell = n - k
    rows, rhs = [], []
    for i in range(k):
        for j in range(k):
            rows.append(forms[i][j])
            rhs.append(int(i == j))
    for h in HL.rows:
        coef = [0] * nunk
        for e, hv in enumerate(h):
            if hv:
                i, j = k - 1 - e // ell, k + e % ell
                for v, c in enumerate(forms[i][j]):
                    if c:
                        coef[v] = (coef[v] + hv * c) % q
        rows.append(coef)
        rhs.append(0)
    return Matrix(f, rows, ncols=nunk), rhs, forms


def _image(field: PrimeField, sols: AffineSolutionSet, forms) -> list[tuple[int, ...]]:
    """Distinct flattened U matrices over an affine solution set."""
    q = field.q
    flat = [c for row in forms for c in row]

    def apply(z):
        return tuple(sum(a * b for a, b in zip(c, z)) % q for c in flat)

    base = apply(sols.particular)
    gens = [apply(v) for v in sols.basis]
    gens = [g for g in gens if any(g)]
    if gens:
        Rm, piv = rref(Matrix(field, gens, ncols=len(base)))
        gens = list(Rm.rows[: len(piv)])
    out = []
    for coeffs in itertools.product(range(q), repeat=len(gens)):
        out.append(tuple((b + sum(c * g[j] for c, g in zip(coeffs, gens))) % q
                         for j, b in enumerate(base)))
    return out


MAX_RECORDED_PARAMETERS = 4096


def list_decode_rational(code: LiftedCode, R: Subspace, metric: str, radius: int,
                         budget_bits: float = DEFAULT_BUDGET_BITS) -> DecodeList:
    _check_received(code, R)
    p = rational_param(R, metric, radius, code.k)
    if p.is_empty:
        return DecodeList("rational", metric, radius, ())
    f, k, n = code.field, code.k, code.n
    nu, m = p.inner, n - R.k
    HL = block_code_CL(code.inner).parity_check
    # enumerate the smaller factor; ties go to X
    enumerate_x = k * nu <= nu * m
    shape = (k, nu) if enumerate_x else (nu, m)
    symbols = shape[0] * shape[1]
    if _bits(f.q, symbols) > budget_bits:
        raise BudgetExceededError(f"rational enumeration over {symbols} symbols",
                                  f.q ** symbols, int(2 ** budget_bits))
    words = set()
    params = set()
    for vals in itertools.product(range(f.q), repeat=symbols):
        fixed = Matrix(f, [vals[r * shape[1]:(r + 1) * shape[1]] for r in range(shape[0])],
                       ncols=shape[1])
        A, rhs, forms = _rational_system(code, p, fixed, enumerate_x, HL)
        sols = solve_affine(A, rhs)
        if sols.is_empty:
            continue
        if len(sols) <= MAX_RECORDED_PARAMETERS:
            nv1 = k * R.k
            for z in sols:
                other = tuple(z[nv1:])
                params.add(tuple(vals) + other if enumerate_x else other + tuple(vals))
        for U in _image(f, sols, forms):
            rows = tuple(U[i * n:(i + 1) * n] for i in range(k))
            words.add(Subspace(f, n, rows))
    return DecodeList("rational", metric, radius, _sorted(words), tuple(sorted(params)))


DECODERS = {"plucker": list_decode_plucker, "rational": list_decode_rational,
            "oracle": oracle_list_decode}


def decode(code: LiftedCode, R: Subspace, method: str, metric: str, radius: int) -> DecodeList:
    if method not in DECODERS:
        raise InvalidInputError(f"unknown method {method!r}; expected one of {METHODS}")
    return DECODERS[method](code, R, metric, radius)


# -- list-size bounds ----------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """Lower bound on the worst-case list size and its asymptotic companions.

    ``threshold_radius`` is the radius (in the requested metric's units) from
    which the list size grows exponentially in n; it is irrational in general.
    """

    metric: str
    radius: int
    n: int
    k: int
    delta: int
    q: int
    lower_bound: Fraction
    asymptotic_exponent: int
    threshold_radius: float | None

    def to_json(self) -> dict:
        return {"metric": self.metric, "radius": self.radius, "n": self.n, "k": self.k,
                "delta": self.delta, "q": self.q,
                "lower_bound": {"numerator": self.lower_bound.numerator,
                                "denominator": self.lower_bound.denominator},
                "asymptotic_exponent": self.asymptotic_exponent,
                "threshold_radius": self.threshold_radius}


def threshold_t(n: int, k: int, delta: int, epsilon: float = 0.0) -> float | None:
    disc = n * (n - 4 * delta + 4 * epsilon) + 4 * k * delta + 4 * k
    if disc < 0:
        return None
    return (n - math.sqrt(disc)) / 2


def list_size_lower_bound(metric: str, radius: int, n: int, k: int, delta: int, q: int,
                          epsilon: float = 0.0) -> BoundReport:
    """Gauss(k, t) / q^{(n-k)(delta-t-1)} with t = floor(tau/2) (subspace) or t (injection)."""
    if metric not in ("subspace", "injection"):
        raise InvalidInputError(f"unknown metric {metric!r}")
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    t = radius // 2 if metric == "subspace" else radius
    below = radius < 2 * delta if metric == "subspace" else radius < delta
    if not (below and delta <= k and 2 * k <= n):
        raise InvalidInputError(
            "bound holds for radius below the designed distance and delta <= k <= n/2")
    if not 0 <= epsilon < 1:
        raise InvalidInputError("epsilon must lie in [0, 1)")
    lb = Fraction(gaussian_binomial(k, t, q), q ** ((n - k) * (delta - t - 1)))
    thr = threshold_t(n, k, delta, epsilon)
    if thr is not None and metric == "subspace":
        thr = 2 * thr
    return BoundReport(metric, radius, n, k, delta, q, lb,
                       -t * t + n * t - (n - k) * (delta - 1), thr)
