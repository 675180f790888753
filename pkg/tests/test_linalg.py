import itertools
from fractions import Fraction

import pytest
import sympy
from helpers import determinantal_exponents, rand_invertible, rand_padic_invertible, rand_unimodular, seeded
from hypothesis import given
from hypothesis import strategies as st

from bruhat_tits.errors import DimensionMismatch, SingularMatrix
from bruhat_tits.linalg import (
    ExactMatrix,
    as_matrix,
    det,
    hnf_dvr,
    inverse,
    is_unimodular,
    minplus_permanent,
    rank,
    snf_dvr,
    solve,
    tropical_bound,
)
from bruhat_tits.scalars import INF, ExtScalar, FieldConfig


def F(x):
    return Fraction(x)


# -- basic algebra ------------------------------------------------------------

def test_solve_examples():
    p = 2
    assert solve(as_matrix([[1, 0], [0, 1]], p), [4, 5]) == [4, 5]
    assert solve(as_matrix([[2, 0], [0, 1]], p), [2, 3]) == [1, 3]
    assert solve(as_matrix([[1, 1], [0, 1]], p), [1, 1]) == [0, 1]


def test_solve_rejects_singular_and_mismatched():
    with pytest.raises(SingularMatrix):
        solve(as_matrix([[1, 2], [2, 4]], 3), [1, 1])
    with pytest.raises(DimensionMismatch):
        solve(as_matrix([[1, 0], [0, 1]], 3), [1, 1, 1])


@pytest.mark.parametrize("seed", range(25))
def test_det_matches_sympy(seed):
    rng = seeded(seed)
    n = 1 + seed % 5
    M = rand_invertible(rng, n, FieldConfig(3), bound=50)
    S = sympy.Matrix([[sympy.Rational(M[i, j].coeffs[0].numerator, M[i, j].coeffs[0].denominator)
                       for j in range(n)] for i in range(n)])
    d = S.det()
    assert det(M) == Fraction(int(sympy.fraction(d)[0]), int(sympy.fraction(d)[1]))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_inverse_and_solve_over_extensions(m):
    rng = seeded(m)
    cfg = FieldConfig(5, m)
    for n in range(1, 5):
        M = rand_invertible(rng, n, cfg, bound=30)
        I = ExactMatrix.identity(n, cfg)
        assert M @ inverse(M) == I and inverse(M) @ M == I
        b = [ExtScalar.theta_power(k, cfg) + k for k in range(n)]
        assert M @ solve(M, b) == [ExtScalar.coerce(x, cfg) for x in b]


def test_rank():
    assert rank(as_matrix([[1, 2], [2, 4]], 2)) == 1
    assert rank(as_matrix([[1, 2, 3], [0, 1, 1], [1, 3, 4]], 2)) == 2
    assert rank(as_matrix([[0, 0], [0, 0]], 2)) == 0


def test_constructor_validates():
    with pytest.raises(DimensionMismatch):
        ExactMatrix(2, 2, [1, 2, 3], FieldConfig(2))
    with pytest.raises(DimensionMismatch):
        as_matrix([[1, 2], [3, 4]], 2) @ as_matrix([[1, 2, 3]], 2)


# -- unimodularity ------------------------------------------------------------

@pytest.mark.parametrize("rows,expected", [
    ([[1, 1], [0, 1]], True),
    ([[1, F(1) / 2], [0, 1]], False),
    ([[2, 0], [0, F(1) / 2]], False),
    ([[3, 1], [1, 1]], False),
    ([[F(1) / 3, 1], [0, 1]], True),
])
def test_is_unimodular_examples(rows, expected):
    assert is_unimodular(as_matrix(rows, 2)) is expected


@given(st.integers(0, 10**6), st.integers(1, 4), st.sampled_from([2, 3, 5]))
def test_random_unimodular_products_are_unimodular(seed, n, p):
    U = rand_unimodular(seeded(seed), n, FieldConfig(p))
    assert is_unimodular(U) and is_unimodular(inverse(U))


# -- Smith form ---------------------------------------------------------------

def test_snf_examples():
    p = 2
    assert snf_dvr(as_matrix([[2, 0], [0, 4]], p)).exponents == (1, 2)
    r = snf_dvr(as_matrix([[1, 1], [1, 3]], p))
    assert r.exponents == (0, 1)
    assert r.reconstruct() == as_matrix([[1, 1], [1, 3]], p)
    r = snf_dvr(ExactMatrix.identity(3, FieldConfig(5)))
    assert r.exponents == (0, 0, 0)


def test_snf_pivot_tie_break_is_deterministic():
    M = as_matrix([[2, 1], [1, 2]], 3)
    a, b = snf_dvr(M), snf_dvr(M)
    assert a == b
    assert a.exponents == (0, 1)


def _check_snf(M):
    r = snf_dvr(M)
    assert r.reconstruct() == M
    assert is_unimodular(r.U) and is_unimodular(r.W)
    assert list(r.exponents) == sorted(r.exponents)
    assert sum(r.exponents) == det(M).val()
    assert all(Fraction(a * M.config.m).denominator == 1 for a in r.exponents)
    return r


@pytest.mark.parametrize("seed", range(40))
def test_snf_matches_determinantal_divisors(seed):
    rng = seeded(1000 + seed)
    p = (2, 3, 5)[seed % 3]
    m = 1 + seed % 2
    n = 1 + seed % 3
    M = rand_invertible(rng, n, FieldConfig(p, m), bound=200)
    r = _check_snf(M)
    assert r.exponents == determinantal_exponents(M)


@pytest.mark.parametrize("seed", range(30))
def test_snf_exponents_dominate_tropical_bound(seed):
    rng = seeded(2000 + seed)
    p = (2, 3)[seed % 2]
    n = 2 + seed % 3
    M = rand_padic_invertible(rng, n, p)
    r = _check_snf(M)
    for s in range(1, n + 1):
        assert sum(r.exponents[:s]) >= tropical_bound(M, s)


def test_tropical_bound_is_strict_under_cancellation():
    M = as_matrix([[1, 1], [1, 3]], 2)
    assert tropical_bound(M, 2) == 0
    assert sum(snf_dvr(M).exponents) == 1


def test_minplus_permanent_small():
    assert minplus_permanent([[0, 1], [1, 0]]) == 0
    assert minplus_permanent([[5, 1], [1, 5]]) == 2
    assert minplus_permanent([[INF, 1], [INF, 0]]) is INF


@pytest.mark.parametrize("seed", range(10))
def test_snf_of_unimodular_sandwich(seed):
    rng = seeded(3000 + seed)
    cfg = FieldConfig(3)
    n = 3
    exps = sorted(rng.randint(-2, 3) for _ in range(n))
    D = ExactMatrix.diag([Fraction(3) ** e for e in exps], cfg)
    M = rand_unimodular(rng, n, cfg) @ D @ rand_unimodular(rng, n, cfg)
    assert _check_snf(M).exponents == tuple(exps)


def test_snf_needs_square():
    with pytest.raises(DimensionMismatch):
        snf_dvr(as_matrix([[1, 2, 3]], 2))


# -- Hermite form -------------------------------------------------------------

@pytest.mark.parametrize("rows,expected", [
    ([[2, 3], [0, 1]], [[2, 1], [0, 1]]),
    ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
    ([[4, 2], [0, 2]], [[4, 2], [0, 2]]),
])
def test_hnf_examples(rows, expected):
    assert hnf_dvr(as_matrix(rows, 2)) == as_matrix(expected, 2)


@pytest.mark.parametrize("seed", range(40))
def test_hnf_is_a_canonical_form(seed):
    rng = seeded(4000 + seed)
    p = (2, 3, 5)[seed % 3]
    n = 2 + seed % 2
    cfg = FieldConfig(p)
    M = rand_padic_invertible(rng, n, p)
    H = hnf_dvr(M)
    assert hnf_dvr(H) == H
    assert hnf_dvr(M @ rand_unimodular(rng, n, cfg)) == H
    # same lattice: H = M u for a unimodular u
    assert is_unimodular(inverse(M) @ H)
    # shape: upper triangular, p-power diagonal, reduced entries to the right of it
    for i in range(n):
        d = H[i, i].to_fraction()
        e = H[i, i].val()
        assert d == Fraction(p) ** int(e)
        for j in range(n):
            x = H[i, j].to_fraction()
            if j < i:
                assert x == 0
            elif j > i:
                assert 0 <= x < d


def test_hnf_rejects_extensions():
    with pytest.raises(ValueError):
        hnf_dvr(ExactMatrix.identity(2, FieldConfig(2, 2)))


def test_matrix_products_are_associative():
    rng = seeded(5)
    cfg = FieldConfig(2, 2)
    A, B, C = (rand_invertible(rng, 3, cfg, bound=20) for _ in range(3))
    assert (A @ B) @ C == A @ (B @ C)
    assert det(A @ B) == det(A) * det(B)


def test_lift_keeps_values():
    M = as_matrix([[1, 2], [3, 4]], 3)
    assert M.lift(2) == M
    assert list(itertools.chain.from_iterable(M.lift(2).valuations())) == [0, 0, 1, 0]
