from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mocklie.field import GF, QQ
from mocklie.linalg import Matrix, SparseEchelon, nullspace, rank, solve

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@given(matrices())
def test_rank_nullity(rows):
    m = Matrix(rows)
    assert rank(m) + len(nullspace(m)) == m.ncols


@given(matrices())
def test_nullspace_vectors_are_killed(rows):
    m = Matrix(rows)
    for v in nullspace(m):
        assert not any(m.apply(v))


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_consistent_rhs(rows, x):
    m = Matrix(rows)
    x = x[: m.ncols]
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


def test_solve_inconsistent_returns_none():
    assert solve(Matrix([[1, 1], [2, 2]]), [1, 3]) is None


def test_solve_length_mismatch():
    with pytest.raises(ValueError):
        solve(Matrix([[1, 0]]), [1, 2])


def test_rref_known():
    red, piv = Matrix([[2, 4, 2], [1, 2, 3]]).rref()
    assert piv == [0, 2]
    assert red.rows[0] == (1, 2, 0)


def test_rank_over_prime_field_can_drop():
    m = Matrix([[1, 2], [3, 1]], GF(5))
    assert rank(m) == 1
    assert rank(Matrix([[1, 2], [3, 1]])) == 2


def test_exact_rationals_no_rounding():
    m = Matrix([[Fraction(1, 3), Fraction(1, 7)], [Fraction(1, 6), Fraction(1, 14)]])
    assert rank(m) == 1


@settings(max_examples=50)
@given(st.lists(st.dictionaries(st.integers(0, 6), small), max_size=8))
def test_sparse_echelon_matches_dense_rank(rows):
    ech = SparseEchelon(QQ)
    for r in rows:
        ech.add({k: QQ(v) for k, v in r.items() if v})
    dense = Matrix([[r.get(k, 0) for k in range(7)] for r in rows], QQ, 7) if rows else None
    assert len(ech) == (rank(dense) if dense is not None else 0)


def test_matmul_identity():
    m = Matrix([[1, 2], [3, 4]])
    assert Matrix.identity(2) @ m == m
