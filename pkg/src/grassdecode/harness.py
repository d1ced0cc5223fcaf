"""Subspace channel with dimension deletions and insertions, and the experiment runner.

Randomness comes from ``random.Random`` (Mersenne Twister MT19937); trial i
of an experiment seeded with s uses its own generator seeded with s + i.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .decode import METHODS, decode
from .errors import InvalidInputError
from .fields import PrimeField
from .gabidulin import LiftedCode
from .linalg import Matrix, mat_mul
from .subspace import Subspace, span

RNG_NAME = "MT19937"


@dataclass(frozen=True)
class ChannelParams:
    deletions: int
    insertions: int
    seed: int = 0

    def __post_init__(self):
        if self.deletions < 0 or self.insertions < 0:
            raise InvalidInputError("deletions and insertions must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise InvalidInputError("seed must be a 64-bit unsigned integer")

    def check(self, k: int, n: int) -> None:
        if self.deletions > k:
            raise InvalidInputError(f"cannot delete {self.deletions} dimensions from a {k}-dim space")
        if k - self.deletions + self.insertions > n:
            raise InvalidInputError(
                f"output dimension {k - self.deletions + self.insertions} exceeds ambient {n}")


def _digits(value: int, q: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        value, r = divmod(value, q)
        out.append(r)
    return out


def random_vector_outside(field: PrimeField, S: Subspace, rng: random.Random) -> tuple[int, ...]:
    """Uniform vector of F_q^n not in S, drawn without rejection.

    v = c S + w with c uniform and w a nonzero vector supported off the pivots;
    this decomposition is unique, so v is uniform on the complement.
    """
    q, n = field.q, S.n
    pivots = set(S.pivots)
    free = [j for j in range(n) if j not in pivots]
    if not free:
        raise InvalidInputError("subspace is the whole space")
    w = _digits(rng.randrange(1, q ** len(free)), q, len(free))
    c = [rng.randrange(q) for _ in range(S.k)]
    v = [0] * n
    for j, x in zip(free, w):
        v[j] = x
    for coef, row in zip(c, S.rows):
        if coef:
            v = [(a + coef * b) % q for a, b in zip(v, row)]
    return tuple(v)


def random_subspace_of(V: Subspace, dim: int, rng: random.Random) -> Subspace:
    """Uniform dim-dimensional subspace of V: grow a basis of coefficient vectors one at a time."""
    f = V.field
    coeffs = Subspace.zero(f, V.k)
    for _ in range(dim):
        v = random_vector_outside(f, coeffs, rng)
        coeffs = span(Matrix(f, coeffs.rows + (v,), ncols=V.k))
    if not dim:
        return Subspace.zero(f, V.n)
    return span(mat_mul(coeffs.basis, V.basis))


def transmit(V: Subspace, p: ChannelParams, rng: random.Random | None = None) -> Subspace:
    """Delete ``p.deletions`` dimensions of V, then insert ``p.insertions`` new ones."""
    p.check(V.k, V.n)
    rng = random.Random(p.seed) if rng is None else rng
    out = random_subspace_of(V, V.k - p.deletions, rng)
    for _ in range(p.insertions):
        v = random_vector_outside(V.field, out, rng)
        out = span(Matrix(V.field, out.rows + (v,), ncols=V.n))
    return out


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    sent: int
    received_dim: int
    list_size: int
    success: bool

    def to_json(self) -> dict:
        return {"trial": self.trial, "sent": self.sent, "received_dim": self.received_dim,
                "list_size": self.list_size, "success": self.success}


@dataclass(frozen=True)
class ExperimentReport:
    method: str
    metric: str
    radius: int
    params: ChannelParams
    trials: tuple[TrialRecord, ...]

    @property
    def success_rate(self) -> float:
        return sum(t.success for t in self.trials) / len(self.trials) if self.trials else 0.0

    @property
    def unique_rate(self) -> float:
        return sum(t.list_size == 1 for t in self.trials) / len(self.trials) if self.trials else 0.0

    @property
    def mean_list_size(self) -> float:
        return sum(t.list_size for t in self.trials) / len(self.trials) if self.trials else 0.0

    def to_json(self) -> dict:
        return {
            "method": self.method, "metric": self.metric, "radius": self.radius,
            "deletions": self.params.deletions, "insertions": self.params.insertions,
            "seed": self.params.seed, "rng": RNG_NAME,
            "success_rate": self.success_rate, "unique_rate": self.unique_rate,
            "mean_list_size": self.mean_list_size,
            "trials": [t.to_json() for t in self.trials],
        }

    def summary(self) -> str:
        return (f"{len(self.trials)} trials, method={self.method}, metric={self.metric}, "
                f"radius={self.radius}: success rate {self.success_rate:.4f}, "
                f"unique rate {self.unique_rate:.4f}, mean list size {self.mean_list_size:.4f}")


def run_experiment(code: LiftedCode, p: ChannelParams, method: str, metric: str, radius: int,
                   trials: int) -> ExperimentReport:
    """Encode a uniformly chosen codeword, send it through the channel, decode; repeat."""
    if method not in METHODS:
        raise InvalidInputError(f"unknown method {method!r}; expected one of {METHODS}")
    if trials < 0:
        raise InvalidInputError("trial count must be non-negative")
    p.check(code.k, code.n)
    words = list(code.codewords())
    records = []
    for i in range(trials):
        rng = random.Random(p.seed + i)
        sent = rng.randrange(len(words))
        R = transmit(words[sent], p, rng)
        found = decode(code, R, method, metric, radius)
        records.append(TrialRecord(i, sent, R.k, len(found), words[sent] in found.as_set()))
    return ExperimentReport(method, metric, radius, p, tuple(records))
