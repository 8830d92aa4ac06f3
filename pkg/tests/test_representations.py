import random
from fractions import Fraction

import pytest

from mocklie.algebra import abelian, is_mock_lie
from mocklie.catalog import get_algebra
from mocklie.linalg import Matrix, rank
from mocklie.representations import (
    DegenerateAntiderivationError,
    InvalidModuleError,
    adjoint_module,
    antiderivations,
    coboundary0,
    coboundary1_h1,
    coboundary1_h2,
    coboundary2,
    cube_vanishes,
    faithful_from_nondegenerate,
    graded_embedding,
    graded_faithful_representation,
    inner_antiderivation,
    is_antiderivation,
    make_module,
    representation_kernel,
    semidirect_extension,
    tensor_extension,
    trivial_cohomology_dims,
    trivial_module,
    truncated_poly_algebra,
)

CATALOG = ["A01", "A12", "A13", "C3", "A12+A01", "A12+A12", "A13+A01", "A12+A13", "A13+A01+A01"]


def _span(mats):
    rows = [tuple(x for r in m.rows for x in r) for m in mats]
    return Matrix(rows).rref()[0].rows[: rank(Matrix(rows))] if rows else ()


def _same_span(a, b):
    return _span(a) == _span(b)


@pytest.mark.parametrize("name", CATALOG)
def test_adjoint_modules_valid(name):
    assert adjoint_module(get_algebra(name)).is_valid()


def test_adjoint_a12_matrices(a12):
    V = adjoint_module(a12)
    assert V.rho[0].rows == ((0, 0), (1, 0))
    assert V.rho[1].is_zero()


def test_adjoint_rejects_non_mock_lie():
    from mocklie.algebra import rank_two_algebra

    with pytest.raises(InvalidModuleError):
        adjoint_module(rank_two_algebra(2))


def test_make_module_validates(a12):
    # rho(a) nonzero with rho(b) = 0 breaks rho(a*a) = -2 rho(a)^2 unless rho(a)^2 = 0
    with pytest.raises(InvalidModuleError):
        make_module(a12, 1, [[[1]], [[0]]])
    assert make_module(a12, 2, [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]).is_valid()


@pytest.mark.parametrize("n,dim", [(2, 1), (3, 2), (4, 3), (5, 3), (6, 3), (7, 3), (8, 3)])
def test_truncated_poly_antiderivation_dims(n, dim):
    assert antiderivations(truncated_poly_algebra(n)).dim == dim


def _representatives(n):
    T = truncated_poly_algebra(n)
    d = n - 1

    def m(entries):
        rows = [[0] * d for _ in range(d)]
        for src, dst, c in entries:
            rows[dst - 1][src - 1] = c
        return Matrix(rows, T.field, d)

    reps = [m([(1, n - 1, 1)])]
    if n >= 3:
        reps.append(m([(1, n - 2, Fraction(-1, 2)), (2, n - 1, 1)]))
    if n >= 4:
        reps.append(m([(1, n - 3, 1), (2, n - 2, -2), (3, n - 1, 1)]))
    return T, reps


@pytest.mark.parametrize("n", range(2, 9))
def test_truncated_poly_basis_matches_representatives(n):
    T, reps = _representatives(n)
    S = antiderivations(T)
    for D in reps:
        assert is_antiderivation(T, S.module, D)
    assert _same_span(S.basis, reps)


def test_trivial_module_everything_is_antiderivation():
    L = abelian(3)
    assert antiderivations(L, trivial_module(L, 2)).dim == 6


def test_inner_antiderivations_are_antiderivations():
    rng = random.Random(2)
    for name in CATALOG:
        L = get_algebra(name)
        V = adjoint_module(L)
        S = antiderivations(L, V)
        for _ in range(3):
            v = [rng.randint(-3, 3) for _ in range(V.dim)]
            D = inner_antiderivation(V, v)
            assert is_antiderivation(L, V, D)
        assert S.inner_dim <= S.dim


def test_cube_zero_when_extension_is_mock_lie():
    # D^3 = 0 is forced by 3-Engel only when L + KD is mock-Lie
    for name in CATALOG:
        L = get_algebra(name)
        for D in antiderivations(L).basis:
            if is_mock_lie(semidirect_extension(L, D)):
                assert cube_vanishes(D)


def test_a12_has_antiderivation_with_nonzero_cube(a12):
    S = antiderivations(a12)
    assert S.dim == 2
    assert not all(cube_vanishes(D) for D in S.basis)


def test_tensor_extension_shapes(a12, a13):
    E = tensor_extension(a12, 3)
    assert E.dim == 4 and is_mock_lie(E)
    assert E.mul(E.basis_vector(0), E.basis_vector(0)) == E.basis_vector(3)
    assert is_mock_lie(tensor_extension(a13, 4))
    assert tensor_extension(abelian(2), 4).is_abelian()


def test_graded_embedding_checks_grading(a12):
    E, emb = graded_embedding(a12, [1, 2])
    assert rank(emb) == 2
    with pytest.raises(ValueError):
        graded_embedding(a12, [1, 1])


@pytest.mark.parametrize("name,grading", [("A12", [1, 2]), ("A13", [1, 1, 2]), ("A12+A01", [1, 2, 1]), ("C3", [1, 1, 2])])
def test_graded_faithful_representation(name, grading):
    rep = graded_faithful_representation(get_algebra(name), grading)
    assert rep.is_valid()
    assert not representation_kernel(rep)


def test_faithful_from_identity_on_abelian():
    L = abelian(2)
    rep = faithful_from_nondegenerate(L, trivial_module(L, 2), Matrix.identity(2))
    assert rep.is_valid() and rep.is_faithful()


def test_degenerate_antiderivation_rejected(a13):
    with pytest.raises(DegenerateAntiderivationError):
        faithful_from_nondegenerate(a13, trivial_module(a13, 2), Matrix([[1, 0, 0], [0, 1, 0]]))


def test_trivial_cohomology(a12):
    d = trivial_cohomology_dims(a12)
    assert d["h1"] == 1 and d["d2_after_d1_zero"]
    ab = trivial_cohomology_dims(abelian(3), 2)
    assert ab["h1"] == 6 and ab["ranks"] == {"d1": 0, "d2": 0}


@pytest.mark.parametrize("name", CATALOG)
def test_d2_after_d1_vanishes(name):
    L = get_algebra(name)
    V = trivial_module(L)
    assert (coboundary2(L, V) @ coboundary1_h1(L, V)).is_zero()
    assert (coboundary2(L, V) @ coboundary1_h2(L, V)).is_zero()


@pytest.mark.parametrize("name", CATALOG)
def test_h1_coboundary_after_d0_vanishes(name):
    L = get_algebra(name)
    V = adjoint_module(L)
    assert (coboundary1_h1(L, V) @ coboundary0(L, V)).is_zero()


def test_coboundary_sign_variants_differ(a13):
    V = adjoint_module(a13)
    assert coboundary1_h1(a13, V) != coboundary1_h2(a13, V)
