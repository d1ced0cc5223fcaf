import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from grassdecode.balls import (BallOutcome, BallSpec, RadiusOutOfRange, assemble_candidate, ball_equations,
                               ball_membership, ball_outcome, bound_tuple, effective_radius,
                               enumerate_rational_ball, forbidden_indices, inner_rank, low_rank_products,
                               rational_param, standardizing_transform, theta_count)
from grassdecode.errors import InvalidInputError
from grassdecode.fields import PrimeField
from grassdecode.linalg import Matrix, det, inverse, rank
from grassdecode.pluecker import bruhat_leq, multiindices, plucker_embed
from grassdecode.subspace import (act, d_injection, d_subspace, distance, enumerate_grassmannian, span,
                                  standard_subspace)

F2, F3 = PrimeField(2), PrimeField(3)
R1 = span(Matrix(F2, [[1, 0, 1, 0], [0, 0, 0, 1]]))
R2 = span(Matrix(F2, [[1, 0, 0, 1], [0, 1, 1, 1]]))
CODEWORDS = [span(Matrix(F2, r)) for r in ([[1, 0, 0, 1], [0, 1, 1, 0]], [[1, 0, 1, 1], [0, 1, 0, 1]],
                                            [[1, 0, 1, 0], [0, 1, 1, 1]], [[1, 0, 0, 0], [0, 1, 0, 0]])]


def radii(metric, n):
    return range(0, 2 * n + 1) if metric == "subspace" else range(0, n + 1)


def check_equations_match_membership(F, k, n, centers):
    space = list(enumerate_grassmannian(F, k, n))
    images = {V: plucker_embed(V) for V in space} if 0 < k else {}
    for R in centers:
        for metric in ("subspace", "injection"):
            for r in radii(metric, n):
                eqs = ball_equations(R, metric, r, k)
                spec = BallSpec(R, k, metric, r)
                for V in space:
                    assert eqs.satisfied_by(images[V]) == ball_membership(V, spec), (R, metric, r, V)


@pytest.mark.parametrize("metric,radius,k,kc,expected", [
    ("subspace", 3, 2, 2, 2), ("subspace", 3, 2, 3, 3), ("injection", 2, 3, 2, 2),
    ("subspace", 0, 1, 2, -1), ("subspace", 4, 2, 2, 4)])
def test_effective_radius(metric, radius, k, kc, expected):
    assert effective_radius(metric, radius, k, kc) == expected


def test_effective_radius_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        effective_radius("hamming", 1, 1, 1)
    with pytest.raises(InvalidInputError):
        effective_radius("subspace", -1, 1, 1)


def test_forbidden_indices_examples():
    assert bound_tuple("subspace", 2, 3, 6, 3) == (3, 6)
    assert set(forbidden_indices("subspace", 2, 3, 6, 3)) == {
        I for I in multiindices(6, 2) if not bruhat_leq(I, (3, 6))}
    assert bound_tuple("subspace", 3, 2, 6, 3) == (2, 5, 6)
    assert set(forbidden_indices("subspace", 3, 2, 6, 3)) == {
        I for I in multiindices(6, 3) if not bruhat_leq(I, (2, 5, 6))}
    assert forbidden_indices("subspace", 2, 2, 4, 2) == [(3, 4)]
    assert bound_tuple("injection", 3, 2, 6, 2) == (2, 5, 6)


def test_out_of_range_radius_is_structured():
    with pytest.raises(RadiusOutOfRange) as e:
        forbidden_indices("subspace", 2, 2, 4, 4)
    assert e.value.outcome is BallOutcome.EVERYTHING
    with pytest.raises(RadiusOutOfRange) as e:
        forbidden_indices("subspace", 3, 1, 5, 1)
    assert e.value.outcome is BallOutcome.EMPTY
    assert ball_outcome("injection", 2, 2, 2, 4) is BallOutcome.EVERYTHING
    assert ball_outcome("injection", 1, 2, 2, 4) is BallOutcome.EQUATIONS


def test_theta_examples():
    assert theta_count("subspace", 2, 2, 4, 2) == 1
    assert theta_count("subspace", 2, 2, 4, 4) == 0
    assert theta_count("injection", 3, 2, 6, 2) == len(forbidden_indices("injection", 3, 2, 6, 2)) == 4
    with pytest.raises(RadiusOutOfRange):
        theta_count("subspace", 3, 1, 5, 0)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_theta_equals_forbidden_count_for_standard_center(n):
    for k, kc in itertools.product(range(1, n), repeat=2):
        for metric in ("subspace", "injection"):
            for r in radii(metric, n):
                if ball_outcome(metric, r, k, kc, n) is BallOutcome.EQUATIONS:
                    assert theta_count(metric, k, kc, n, r) == len(forbidden_indices(metric, k, kc, n, r))


def test_standardizing_transform_examples():
    assert standardizing_transform(R2).rows == ((1, 0, 0, 1), (0, 1, 1, 1), (0, 0, 1, 0), (0, 0, 0, 1))
    A1 = standardizing_transform(R1)
    A1inv = Matrix(F2, [[1, 0, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]])
    assert inverse(A1) == A1inv
    assert standardizing_transform(standard_subspace(F3, 2, 5)) == Matrix.identity(F3, 5)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([F2, F3]), st.integers(1, 4), st.integers(0, 2**32))
def test_standardizing_transform_moves_standard_point(F, kc, seed):
    rnd = random.Random(seed)
    subs = list(enumerate_grassmannian(F, kc, 5))
    R = subs[rnd.randrange(len(subs))]
    A = standardizing_transform(R)
    assert det(A) != 0
    assert act(standard_subspace(F, kc, 5), A) == R


def test_ball_equation_examples():
    eq1 = ball_equations(R1, "subspace", 2, 2)
    assert eq1.forbidden == ((3, 4),)
    # the column of phi_bar(A1^-1) at (3,4) reads x12 + x23
    assert eq1.rows == ((1, 0, 0, 1, 0, 0),)
    eq2 = ball_equations(R2, "subspace", 2, 2)
    assert eq2.rows == ((1, 1, 0, 1, 1, 1),)
    eq0 = ball_equations(standard_subspace(F2, 2, 4), "subspace", 0, 2)
    assert eq0.forbidden == tuple(multiindices(4, 2)[1:])
    assert all(sum(r) == 1 for r in eq0.rows)


def test_example_codeword_membership():
    for C in CODEWORDS[:3]:
        assert ball_membership(C, BallSpec(R2, 2, "subspace", 2))
    assert not ball_membership(CODEWORDS[3], BallSpec(R2, 2, "subspace", 2))
    assert ball_membership(R2, BallSpec(R2, 2, "subspace", 0))
    with pytest.raises(InvalidInputError):
        ball_membership(standard_subspace(F2, 1, 4), BallSpec(R2, 2, "subspace", 2))


def test_equations_match_membership_f2_n4_all_centers():
    centers = [U for kc in range(0, 5) for U in enumerate_grassmannian(F2, kc, 4)]
    for k in range(1, 4):
        check_equations_match_membership(F2, k, 4, centers)


def test_equations_match_membership_f3_sample():
    rnd = random.Random(7)
    centers = [U for kc in range(1, 4) for U in rnd.sample(list(enumerate_grassmannian(F3, kc, 4)), 4)]
    check_equations_match_membership(F3, 2, 4, centers)


@pytest.mark.parametrize("F,n", [(F2, 5), (F3, 4)], ids=["F2-5", "F3-4"])
def test_equation_rows_are_independent(F, n):
    rnd = random.Random(3)
    for kc in range(1, n):
        for R in rnd.sample(list(enumerate_grassmannian(F, kc, n)), 3):
            for k in range(1, n):
                for metric in ("subspace", "injection"):
                    for r in radii(metric, n):
                        eqs = ball_equations(R, metric, r, k)
                        if eqs.rows:
                            assert rank(eqs.matrix()) == len(eqs.rows)
                            assert len(eqs.rows) <= theta_count(metric, k, kc, n, r)


def test_translation_covariance():
    rnd = random.Random(11)
    space = list(enumerate_grassmannian(F2, 2, 4))
    for kc in (1, 2, 3):
        U0 = standard_subspace(F2, kc, 4)
        for R in rnd.sample(list(enumerate_grassmannian(F2, kc, 4)), 4):
            A = standardizing_transform(R)
            for metric in ("subspace", "injection"):
                for r in radii(metric, 4):
                    base = {V for V in space if ball_equations(U0, metric, r, 2).satisfied_by(plucker_embed(V))}
                    moved = {V for V in space if ball_equations(R, metric, r, 2).satisfied_by(plucker_embed(V))}
                    assert moved == {act(V, A) for V in base}


def test_radius_conversion():
    space = list(enumerate_grassmannian(F2, 2, 4)) + list(enumerate_grassmannian(F2, 3, 4))
    centers = list(enumerate_grassmannian(F2, 1, 4))[:5] + list(enumerate_grassmannian(F2, 2, 4))[::6]
    for R, V in itertools.product(centers, space):
        for t in range(0, 5):
            tau = 2 * t + V.k + R.k - 2 * max(V.k, R.k)
            assert (d_injection(R, V) <= t) == (d_subspace(R, V) <= tau)


def test_fullness_and_emptiness_exhaustive():
    for n in (4, 5):
        for k, kc in itertools.product(range(1, n), repeat=2):
            space = list(enumerate_grassmannian(F2, k, n))
            R = standard_subspace(F2, kc, n)
            for metric in ("subspace", "injection"):
                for r in radii(metric, n):
                    outcome = ball_outcome(metric, r, k, kc, n)
                    inside = [V for V in space if distance(R, V, metric) <= r]
                    if outcome is BallOutcome.EVERYTHING:
                        assert len(inside) == len(space)
                    elif outcome is BallOutcome.EMPTY:
                        assert inside == []
                    else:
                        assert 0 < len(inside) < len(space)


def test_rational_family_of_worked_example():
    p = rational_param(R2, "subspace", 2, 2)
    assert p.inner == 1 and p.simplified
    assert p.shapes == {"V1": (2, 2), "X": (2, 1), "Y": (1, 2)}
    assert p.unknown_count() == 2 * 2 + (4 - 2 + 2) * 1
    for a, b, c, d, x1, x2, y1, y2 in itertools.product(range(2), repeat=8):
        expected = Matrix(F2, [[a, b, b + x1 * y1, a + b + x1 * y2], [c, d, d + x2 * y1, c + d + x2 * y2]])
        if rank(expected) < 2:
            with pytest.raises(InvalidInputError):
                assemble_candidate(p, Matrix(F2, [[a, b], [c, d]]), Matrix(F2, [[x1], [x2]]),
                                   Matrix(F2, [[y1, y2]]))
            continue
        got = assemble_candidate(p, Matrix(F2, [[a, b], [c, d]]), Matrix(F2, [[x1], [x2]]), Matrix(F2, [[y1, y2]]))
        assert got == span(expected)


def test_zero_perturbation_gives_top_rows():
    p = rational_param(R2, "subspace", 2, 2)
    V1 = Matrix(F2, [[1, 1], [0, 1]])
    got = assemble_candidate(p, V1, Matrix.zeros(F2, 2, 1), Matrix(F2, [[1, 1]]))
    assert got == R2


def test_assemble_checks_shapes():
    p = rational_param(R2, "subspace", 2, 2)
    with pytest.raises(InvalidInputError, match="shape"):
        assemble_candidate(p, Matrix.identity(F2, 2), Matrix.zeros(F2, 2, 2), Matrix.zeros(F2, 1, 2))


def test_inner_rank():
    assert inner_rank("subspace", 2, 2, 2, 4) == 1
    assert inner_rank("subspace", 3, 2, 2, 4) == 1
    assert inner_rank("injection", 1, 2, 2, 4) == 1
    assert inner_rank("injection", 2, 1, 3, 5) == 0
    assert inner_rank("subspace", 0, 1, 3, 5) < 0
    assert inner_rank("subspace", 8, 2, 2, 4) == 2


def test_low_rank_products_match_brute_force():
    for k, m, r in [(2, 2, 1), (2, 3, 1), (3, 2, 2), (2, 2, 0)]:
        brute = set()
        for vals in itertools.product(range(2), repeat=k * m):
            M = Matrix(F2, [vals[i * m:(i + 1) * m] for i in range(k)])
            if rank(M) <= r:
                brute.add(M.rows)
        assert low_rank_products(F2, k, m, r) == brute


@pytest.mark.parametrize("k", [1, 2, 3])
def test_rational_coverage_f2_n4(k):
    space = list(enumerate_grassmannian(F2, k, 4))
    for kc in range(1, 4):
        for R in list(enumerate_grassmannian(F2, kc, 4))[::4]:
            for metric in ("subspace", "injection"):
                for r in radii(metric, 4):
                    got = enumerate_rational_ball(rational_param(R, metric, r, k))
                    want = {V for V in space if distance(R, V, metric) <= r}
                    assert got == want, (R, metric, r, k)
