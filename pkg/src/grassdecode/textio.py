"""Text and JSON formats for matrices, subspaces, Plücker vectors and ball equations.

Matrix text: one row per line, entries as element digit strings separated by
spaces. Lines starting with '#' are comments and blank lines are ignored.
"""

from __future__ import annotations

import re
from math import comb

from .balls import BallOutcome, LinearBallEquations
from .errors import InvalidInputError
from .fields import Field, PrimeField
from .linalg import Matrix
from .pluecker import PlueckerVector, multiindices
from .subspace import Subspace, span


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def format_matrix(M: Matrix) -> str:
    return "\n".join(" ".join(M.field.format(x) for x in row) for row in M.rows)


def parse_matrix(text: str, field: Field, ncols: int | None = None) -> Matrix:
    rows = [[field.parse_code(tok) for tok in ln.split()] for ln in _content_lines(text)]
    if not rows and ncols is None:
        raise InvalidInputError("empty matrix text")
    if len({len(r) for r in rows}) > 1:
        raise InvalidInputError("matrix rows have different lengths")
    return Matrix(field, rows, ncols=ncols if ncols is not None else len(rows[0]))


def format_subspace(U: Subspace) -> str:
    return format_matrix(U.basis)


def parse_subspace(text: str, field: PrimeField) -> Subspace:
    return span(parse_matrix(text, field))


def subspace_to_json(U: Subspace) -> dict:
    return {"n": U.n, "k": U.k, "rows": [list(r) for r in U.rows]}


def subspace_from_json(d: dict, field: PrimeField) -> Subspace:
    try:
        n, rows = int(d["n"]), d["rows"]
    except (KeyError, TypeError, ValueError):
        raise InvalidInputError("subspace JSON needs 'n' and 'rows'") from None
    S = span(Matrix(field, rows, ncols=n))
    if "k" in d and int(d["k"]) != S.k:
        raise InvalidInputError(f"rows span a {S.k}-dim space, JSON says k={d['k']}")
    return S


_HEADER = re.compile(r"#\s*n\s*=\s*(\d+)\s+k\s*=\s*(\d+)")


def format_plucker(x: PlueckerVector, header: bool = True) -> str:
    body = str(x)
    return f"# n={x.n} k={x.k}\n{body}" if header else body


def _infer_shape(count: int) -> tuple[int, int]:
    shapes = [(n, k) for n in range(2, count + 3) for k in range(2, n - 1) if comb(n, k) == count]
    if len(shapes) != 1:
        raise InvalidInputError(
            f"cannot infer (n, k) from {count} coordinates; add a '# n=.. k=..' header")
    return shapes[0]


def parse_plucker(text: str, field: PrimeField, n: int | None = None, k: int | None = None) -> PlueckerVector:
    """Colon-separated coordinates in lex order, normalized on read.

    The shape comes from the arguments, a '# n=.. k=..' header, or, when
    unambiguous, from the coordinate count.
    """
    for ln in text.splitlines():
        m = _HEADER.match(ln.strip())
        if m and n is None and k is None:
            n, k = int(m.group(1)), int(m.group(2))
    lines = _content_lines(text)
    if len(lines) != 1:
        raise InvalidInputError("expected exactly one line of coordinates")
    coords = [field.parse_code(tok) for tok in lines[0].split(":")]
    if n is None or k is None:
        n, k = _infer_shape(len(coords))
    return PlueckerVector.normalized(field, n, k, coords)


def format_ball_equations(eqs: LinearBallEquations) -> str:
    names = " ".join("x" + "".join(map(str, I)) for I in multiindices(eqs.n, eqs.k))
    lines = [f"# variables: {names}"]
    if eqs.outcome is not BallOutcome.EQUATIONS:
        lines.append(f"# ball is {eqs.outcome.value}")
    elif eqs.rows:
        lines.append(format_matrix(eqs.matrix()))
    return "\n".join(lines)


def ball_equations_to_json(eqs: LinearBallEquations) -> dict:
    return {
        "outcome": eqs.outcome.value,
        "variables": ["".join(map(str, I)) for I in multiindices(eqs.n, eqs.k)],
        "forbidden": ["".join(map(str, I)) for I in eqs.forbidden],
        "rows": [list(r) for r in eqs.rows],
    }
