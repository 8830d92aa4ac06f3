import pytest
from hypothesis import given, settings, strategies as st

from mocklie.algebra import (
    AlgebraTable,
    NotAnIdealError,
    Subspace,
    abelian,
    center,
    direct_sum,
    ideal_generated_by,
    is_associative,
    is_commutative,
    is_ideal,
    is_mock_lie,
    jacobi_failures,
    lower_central_series,
    nil_index,
    power,
    quadratic_trichotomy,
    quotient,
    rank_two_algebra,
    restrict,
    subalgebra_generated_by,
    subspace_product,
)
from mocklie.catalog import get_algebra
from mocklie.field import GF

MOCK_LIE = ["A01", "A12", "A13", "C3", "A12+A01", "A12+A12", "A13+A01", "A12+A13", "A13+A01+A01"]


@pytest.mark.parametrize("name", MOCK_LIE)
def test_catalog_algebras_are_mock_lie(name):
    A = get_algebra(name)
    assert is_commutative(A) and is_mock_lie(A)


def test_a13_invariants(a13):
    assert nil_index(a13) == 3
    Z = center(a13)
    assert Z.dim == 1 and Z.contains([0, 0, 1])
    assert [S.dim for S in lower_central_series(a13)] == [3, 1, 0]


def test_a12_square(a12):
    assert a12.mul([1, 0], [1, 0]) == (0, 1)
    assert nil_index(a12) == 3


def test_abelian_nil_index_two():
    assert nil_index(abelian(3)) == 2
    assert center(abelian(3)).dim == 3


def test_zero_algebra_nil_index():
    assert nil_index(abelian(0)) == 1


def test_non_nilpotent_has_no_nil_index():
    assert nil_index(rank_two_algebra(2)) is None


def test_rank_two_algebra_is_jordan_not_mock_lie():
    from mocklie.algebra import is_jordan

    R = rank_two_algebra(3)
    assert is_jordan(R)
    assert not is_mock_lie(R)


def test_jacobi_failure_reported():
    R = rank_two_algebra(1)  # a*a = 2a
    assert jacobi_failures(R, limit=1) == [(0, 0, 0)]


def test_trichotomy():
    assert quadratic_trichotomy(abelian(2))[0] == "trivial"
    kind, alpha = quadratic_trichotomy(rank_two_algebra(3))
    assert kind == "rank2" and alpha == (1, 0, 0)
    kind, x = quadratic_trichotomy(get_algebra("A13"))
    A = get_algebra("A13")
    assert kind == "independent"
    assert Subspace.span(3, [x, A.mul(x, x)]).dim == 2


def test_inconsistent_symmetric_table():
    with pytest.raises(ValueError):
        AlgebraTable(2, {(0, 1): {0: 1}, (1, 0): {1: 1}})


def test_index_out_of_range():
    with pytest.raises(IndexError):
        AlgebraTable(2, {(0, 2): {0: 1}})


def test_quotient_by_center(a13):
    Q = quotient(a13, center(a13))
    assert Q.dim == 2 and Q.is_abelian()


def test_quotient_rejects_non_ideal(a13):
    with pytest.raises(NotAnIdealError):
        quotient(a13, Subspace.span(3, [[1, 0, 0]]))


def test_ideal_generated(a13):
    I = ideal_generated_by(a13, [[1, 0, 0]])
    assert I.dim == 2 and is_ideal(a13, I)


def test_subalgebra_generated(a12):
    S = subalgebra_generated_by(a12, [[1, 0]])
    assert S.dim == 2


def test_restrict_to_ideal(a13):
    I = ideal_generated_by(a13, [[0, 1, 0]])
    R = restrict(a13, I)
    assert R.dim == 2 and R.is_abelian()


def test_direct_sum_labels_and_dims(a12):
    S = direct_sum(a12, a12)
    assert S.dim == 4 and len(set(S.labels)) == 4
    assert nil_index(S) == 3


def test_change_field_keeps_mock_lie(m44):
    A = m44.algebra.change_field(GF(7))
    assert is_mock_lie(A)


def test_m44_power_tower(m44):
    A = m44.algebra
    L2 = power(A, 2)
    t = subspace_product(A, L2, L2)
    t = subspace_product(A, t, L2)
    t = subspace_product(A, t, L2)
    assert subspace_product(A, t, A.whole()).is_zero()


def test_subspace_operations():
    U = Subspace.span(3, [[1, 0, 0], [0, 1, 0]])
    V = Subspace.span(3, [[0, 1, 0], [0, 0, 1]])
    assert (U + V).dim == 3
    assert U.intersection(V) == Subspace.span(3, [[0, 1, 0]])
    assert Subspace.span(3, [[0, 1, 0]]) <= U


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2)), max_size=5))
def test_center_elements_commute_with_everything(entries):
    prods = {}
    for i, j, k, c in entries:
        i, j = min(i, j), max(i, j)
        prods.setdefault((i, j), {})[k] = c
    A = AlgebraTable(3, prods)
    for z in center(A).basis:
        for i in range(3):
            assert not any(A.mul(z, A.basis_vector(i)))


def test_associative_check():
    from mocklie.representations import truncated_poly_algebra

    assert is_associative(truncated_poly_algebra(5))
    assert not is_associative(get_algebra("M44"))
