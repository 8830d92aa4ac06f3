"""Modules, antiderivations and low-degree coboundaries of mock-Lie algebras.

A module (representation) of L on V is a family of matrices rho(e_i) with

    rho(x*y) = -rho(x) rho(y) - rho(y) rho(x).

Linear maps L -> V are stored as dim V x dim L matrices whose j-th column is
the image of e_j.  Symmetric n-ary maps L^n -> V are coordinate vectors
indexed by (component of V, sorted index tuple); see :func:`symmetric_index`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import AlgebraTable, is_mock_lie, jacobi_failures
from .field import QQ, Field
from .linalg import Matrix, nullspace, rank

__all__ = [
    "ModuleRep",
    "InvalidModuleError",
    "DegenerateAntiderivationError",
    "AntiderivationSpace",
    "adjoint_module",
    "regular_module",
    "make_module",
    "trivial_module",
    "antiderivations",
    "is_antiderivation",
    "inner_antiderivation",
    "truncated_poly_algebra",
    "tensor_extension",
    "graded_embedding",
    "faithful_from_nondegenerate",
    "graded_faithful_representation",
    "representation_kernel",
    "semidirect_extension",
    "symmetric_index",
    "coboundary0",
    "coboundary1_h1",
    "coboundary1_h2",
    "coboundary2",
    "trivial_cohomology_dims",
    "cube_vanishes",
]


class InvalidModuleError(ValueError):
    pass


class DegenerateAntiderivationError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleRep:
    algebra: AlgebraTable
    dim: int
    rho: tuple[Matrix, ...]

    @property
    def field(self) -> Field:
        return self.algebra.field

    def act(self, x: Sequence) -> Matrix:
        """rho(x) for a coordinate vector x of the algebra."""
        F = self.field
        out = Matrix.zeros(self.dim, self.dim, F)
        for c, m in zip(x, self.rho):
            c = F(c)
            if c:
                out = out + m.scale(c)
        return out

    def violations(self, limit: int | None = None) -> list[tuple[int, int]]:
        """Basis pairs (i, j), i <= j, on which the module identity fails."""
        A = self.algebra
        bad = []
        for i in range(A.dim):
            for j in range(i, A.dim):
                lhs = self.act(A.to_dense(A.basis_product(i, j)))
                ri, rj = self.rho[i], self.rho[j]
                if lhs + ri @ rj + rj @ ri != Matrix.zeros(self.dim, self.dim, self.field):
                    bad.append((i, j))
                    if limit is not None and len(bad) >= limit:
                        return bad
        return bad

    def is_valid(self) -> bool:
        return not self.violations(limit=1)

    def validate(self) -> "ModuleRep":
        bad = self.violations(limit=1)
        if bad:
            i, j = bad[0]
            lab = self.algebra.labels
            raise InvalidModuleError(
                f"module identity fails on ({lab[i]}, {lab[j]})"
            )
        return self

    def is_faithful(self) -> bool:
        return not representation_kernel(self)


def _check_shapes(L: AlgebraTable, dim: int, rho: Sequence[Matrix]) -> tuple[Matrix, ...]:
    if len(rho) != L.dim:
        raise ValueError(f"need {L.dim} matrices, got {len(rho)}")
    out = []
    for m in rho:
        if not isinstance(m, Matrix):
            m = Matrix(m, L.field, dim)
        if m.shape != (dim, dim):
            raise ValueError(f"matrix of shape {m.shape}, expected {(dim, dim)}")
        out.append(m)
    return tuple(out)


def make_module(L: AlgebraTable, dim: int, rho: Sequence, check: bool = True) -> ModuleRep:
    V = ModuleRep(L, dim, _check_shapes(L, dim, rho))
    return V.validate() if check else V


def adjoint_module(L: AlgebraTable) -> ModuleRep:
    """L acting on itself by multiplication.

    The module identity for this action is exactly the Jacobi identity, so a
    non mock-Lie table is rejected with the offending triple.
    """
    bad = jacobi_failures(L, limit=1)
    if bad:
        raise InvalidModuleError(f"not mock-Lie, Jacobi fails on basis triple {bad[0]}")
    return regular_module(L)


def regular_module(L: AlgebraTable) -> ModuleRep:
    """Multiplication operators of any commutative table, without validation.

    For an algebra that is not mock-Lie this is not a module, but the
    antiderivation equation still makes sense for it.
    """
    rho = [L.left_multiplication(L.basis_vector(i)) for i in range(L.dim)]
    return ModuleRep(L, L.dim, tuple(rho))


def trivial_module(L: AlgebraTable, dim: int = 1) -> ModuleRep:
    z = Matrix.zeros(dim, dim, L.field)
    return ModuleRep(L, dim, (z,) * L.dim)


# ---------------------------------------------------------------------------
# symmetric maps and coboundaries


def symmetric_index(ldim: int, vdim: int, arity: int) -> dict[tuple, int]:
    """Coordinates of S^arity(L, V): key (a, (i1 <= ... <= in)) -> position."""
    keys = itertools.combinations_with_replacement(range(ldim), arity)
    combos = list(keys)
    return {(a, c): a * len(combos) + n for a in range(vdim) for n, c in enumerate(combos)}


def _map_to_vec(phi: Matrix) -> tuple:
    # S^1 coordinates: (a, (j,)) -> a * dimL + j, i.e. row-major
    return tuple(x for row in phi.rows for x in row)


def _vec_to_map(v: Sequence, vdim: int, ldim: int, field: Field) -> Matrix:
    return Matrix([list(v[a * ldim:(a + 1) * ldim]) for a in range(vdim)], field, ldim)


def coboundary0(L: AlgebraTable, V: ModuleRep) -> Matrix:
    """S^0 -> S^1: v -> (x -> rho(x) v)."""
    F = L.field
    rows = []
    for a in range(V.dim):
        for j in range(L.dim):
            rows.append([V.rho[j].rows[a][b] for b in range(V.dim)])
    return Matrix(rows, F, V.dim)


def _coboundary1(L: AlgebraTable, V: ModuleRep, sign: int) -> Matrix:
    F = L.field
    n, m = L.dim, V.dim
    out_idx = symmetric_index(n, m, 2)
    rows = [[F.zero] * (n * m) for _ in out_idx]
    s = F(sign)
    for i in range(n):
        for j in range(i, n):
            prod = L.basis_product(i, j)
            for a in range(m):
                row = rows[out_idx[(a, (i, j))]]
                for k, c in prod.items():
                    row[a * n + k] += c
                # rho(e_i) phi(e_j) + rho(e_j) phi(e_i)
                for b in range(m):
                    row[b * n + j] += s * V.rho[i].rows[a][b]
                    row[b * n + i] += s * V.rho[j].rows[a][b]
    return Matrix(rows, F, n * m)


def coboundary1_h1(L: AlgebraTable, V: ModuleRep) -> Matrix:
    """S^1 -> S^2: phi -> phi(xy) + rho(x)phi(y) + rho(y)phi(x).

    Its kernel is the space of antiderivations L -> V.
    """
    return _coboundary1(L, V, 1)


def coboundary1_h2(L: AlgebraTable, V: ModuleRep) -> Matrix:
    """S^1 -> S^2 with the opposite sign: phi(xy) - rho(x)phi(y) - rho(y)phi(x)."""
    return _coboundary1(L, V, -1)


def coboundary2(L: AlgebraTable, V: ModuleRep) -> Matrix:
    """S^2 -> S^3.

    phi -> phi(xy,z) + phi(zy,x) + phi(xz,y)
           + rho(z)phi(x,y) + rho(x)phi(z,y) + rho(y)phi(x,z)
    """
    F = L.field
    n, m = L.dim, V.dim
    src = symmetric_index(n, m, 2)
    dst = symmetric_index(n, m, 3)
    rows = [[F.zero] * len(src) for _ in dst]
    for x, y, z in itertools.combinations_with_replacement(range(n), 3):
        for a in range(m):
            row = rows[dst[(a, (x, y, z))]]
            for (p, q), r in (((x, y), z), ((z, y), x), ((x, z), y)):
                for k, c in L.basis_product(p, q).items():
                    row[src[(a, tuple(sorted((k, r))))]] += c
            for r, (p, q) in ((z, (x, y)), (x, (z, y)), (y, (x, z))):
                key = tuple(sorted((p, q)))
                for b in range(m):
                    c = V.rho[r].rows[a][b]
                    if c:
                        row[src[(b, key)]] += c
    return Matrix(rows, F, len(src))


def trivial_cohomology_dims(L: AlgebraTable, vdim: int = 1) -> dict:
    """Dimensions for the complex with trivial coefficients up to degree 3.

    With rho = 0 the differential out of S^0 vanishes, so h0 = dim V.  The
    degree-3 entry only records dim S^3 and the rank of the incoming map,
    since no differential out of S^3 is defined.
    """
    V = trivial_module(L, vdim)
    d1 = coboundary1_h1(L, V)
    d2 = coboundary2(L, V)
    r1, r2 = rank(d1), rank(d2)
    s1, s2, s3 = d1.ncols, d2.ncols, d2.nrows
    return {
        "h0": vdim,
        "h1": s1 - r1,
        "h2": (s2 - r2) - r1,
        "h3": {"dim_S3": s3, "rank_d2": r2, "coboundaries": r2},
        "dims": {"S1": s1, "S2": s2, "S3": s3},
        "ranks": {"d1": r1, "d2": r2},
        "d2_after_d1_zero": (d2 @ d1).is_zero(),
    }


# ---------------------------------------------------------------------------
# antiderivations


@dataclass
class AntiderivationSpace:
    algebra: AlgebraTable
    module: ModuleRep
    basis: list[Matrix]
    inner_basis: list[Matrix] = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def inner_dim(self) -> int:
        return len(self.inner_basis)

    @property
    def outer_dim(self) -> int:
        return self.dim - self.inner_dim


def is_antiderivation(L: AlgebraTable, V: ModuleRep, D: Matrix) -> bool:
    img = coboundary1_h1(L, V).apply(_map_to_vec(D))
    return not any(img)


def inner_antiderivation(V: ModuleRep, v: Sequence) -> Matrix:
    """x -> rho(x) v."""
    F = V.field
    cols = [m.apply([F(c) for c in v]) for m in V.rho]
    return Matrix([[cols[j][a] for j in range(len(cols))] for a in range(V.dim)], F, len(cols))


def antiderivations(L: AlgebraTable, V: ModuleRep | None = None) -> AntiderivationSpace:
    """All linear maps D: L -> V with D(xy) = -rho(y)D(x) - rho(x)D(y).

    ``V`` defaults to L acting on itself by multiplication, which is accepted
    for any commutative table (e.g. truncated polynomials).  The inner subspace is spanned by
    the maps x -> rho(x)v.
    """
    if V is None:
        V = regular_module(L)
    F = L.field
    kernel = nullspace(coboundary1_h1(L, V))
    basis = [_vec_to_map(v, V.dim, L.dim, F) for v in kernel]
    inner = []
    if V.dim and L.dim:
        # column space of d0, i.e. the maps x -> rho(x) v
        red, piv = coboundary0(L, V).T.rref()
        inner = [_vec_to_map(red.rows[r], V.dim, L.dim, F) for r in range(len(piv))]
    return AntiderivationSpace(L, V, basis, inner)


def cube_vanishes(D: Matrix) -> bool:
    return (D @ D @ D).is_zero()


# ---------------------------------------------------------------------------
# truncated polynomials and tensor extensions


def truncated_poly_algebra(n: int, field: Field = QQ) -> AlgebraTable:
    """tK[t]/(t^n) on the basis t, t^2, ..., t^(n-1)."""
    if n < 2:
        raise ValueError("need n >= 2")
    products = {}
    for i in range(1, n):
        for j in range(i, n):
            if i + j < n:
                products[(i - 1, j - 1)] = {i + j - 1: 1}
    labels = ["t"] + [f"t^{k}" for k in range(2, n)]
    return AlgebraTable(n - 1, products, labels, field)


def tensor_extension(L: AlgebraTable, n: int) -> AlgebraTable:
    """L (x) tK[t]/(t^n); basis element e_i (x) t^p sits at (p-1)*dim L + i."""
    if n < 2:
        raise ValueError("need n >= 2")
    d = L.dim
    products = {}
    for p in range(1, n):
        for q in range(1, n - p):
            for i, j, v in L.nonzero_products():
                a, b = (p - 1) * d + i, (q - 1) * d + j
                if a <= b:
                    products[(a, b)] = {(p + q - 1) * d + k: c for k, c in v.items()}
    labels = [f"{lab}.t{p}" if p > 1 else f"{lab}.t" for p in range(1, n) for lab in L.labels]
    return AlgebraTable(d * (n - 1), products, labels, L.field)


def graded_embedding(L: AlgebraTable, grading: Sequence[int]) -> tuple[AlgebraTable, Matrix]:
    """Embed an N_{<n}-graded L into L (x) tK[t]/(t^n), e_i -> e_i (x) t^deg(e_i).

    ``grading`` gives the degree of each basis vector.  Returns the extension
    and the embedding matrix; raises if the grading is not compatible with
    the product or the map fails to be a homomorphism.
    """
    grading = list(grading)
    if len(grading) != L.dim or any(g < 1 for g in grading):
        raise ValueError("grading needs one positive degree per basis vector")
    for i, j, v in L.nonzero_products():
        if any(grading[k] != grading[i] + grading[j] for k in v):
            raise ValueError(f"basis is not graded: {L.labels[i]}*{L.labels[j]}")
    n = max(grading, default=1) + 1
    E = tensor_extension(L, n)
    F = L.field
    d = L.dim
    cols = [{(grading[i] - 1) * d + i: F.one} for i in range(d)]
    emb = Matrix(
        [[cols[i].get(r, F.zero) for i in range(d)] for r in range(E.dim)], F, d
    )
    for i in range(d):
        for j in range(i, d):
            lhs = emb.apply(L.to_dense(L.basis_product(i, j)))
            rhs = E.to_dense(E.mul_sparse(cols[i], cols[j]))
            if tuple(lhs) != tuple(rhs):
                raise ValueError("embedding is not multiplicative")
    if rank(emb) != d:
        raise ValueError("embedding is not injective")
    return E, emb


# ---------------------------------------------------------------------------
# faithful representations


def representation_kernel(V: ModuleRep) -> list[tuple]:
    """Basis of {x : rho(x) = 0}."""
    L = V.algebra
    cols = [_map_to_vec(m) for m in V.rho]
    M = Matrix([[cols[i][r] for i in range(L.dim)] for r in range(V.dim * V.dim)], L.field, L.dim)
    return nullspace(M)


def faithful_from_nondegenerate(
    L: AlgebraTable, V: ModuleRep, D: Matrix, full: bool = True
) -> ModuleRep:
    """Faithful module on V + Der(L, V) built from an injective antiderivation D.

    L acts on V as before and sends an antiderivation d to d(x) in V.  With
    ``full=False`` only the line spanned by D is adjoined, which is already
    enough for faithfulness.
    """
    F = L.field
    if D.shape != (V.dim, L.dim):
        raise ValueError(f"D has shape {D.shape}, expected {(V.dim, L.dim)}")
    if not is_antiderivation(L, V, D):
        raise ValueError("D is not an antiderivation")
    if rank(D) != L.dim:
        raise DegenerateAntiderivationError("D degenerate: its kernel is nonzero")
    ders = antiderivations(L, V).basis if full else [D]
    m, k = V.dim, len(ders)
    rho = []
    for x in range(L.dim):
        rows = [list(V.rho[x].rows[a]) + [d.rows[a][x] for d in ders] for a in range(m)]
        rows += [[F.zero] * (m + k) for _ in range(k)]
        rho.append(Matrix(rows, F, m + k))
    return make_module(L, m + k, rho)


def _nondegenerate_antiderivation(T: AlgebraTable) -> Matrix:
    space = antiderivations(T, regular_module(T)).basis
    for D in space:
        if rank(D) == T.dim:
            return D
    if space:
        total = space[0]
        for D in space[1:]:
            total = total + D
        if rank(total) == T.dim:
            return total
        rng = random.Random(0)
        for _ in range(50):
            cand = Matrix.zeros(T.dim, T.dim, T.field)
            for D in space:
                cand = cand + D.scale(rng.randint(-9, 9))
            if rank(cand) == T.dim:
                return cand
    raise DegenerateAntiderivationError(
        f"no injective antiderivation of the {T.dim}-dimensional algebra"
    )


def graded_faithful_representation(L: AlgebraTable, grading: Sequence[int]) -> ModuleRep:
    """Faithful module of an N_{<4}-graded mock-Lie algebra.

    Embeds L in E = L (x) tK[t]/(t^n), takes id (x) D for an injective
    antiderivation D of the truncated polynomials, and restricts the module
    on E + Der(E, E) back to L.
    """
    if not is_mock_lie(L):
        raise InvalidModuleError("algebra is not mock-Lie")
    E, emb = graded_embedding(L, grading)
    n = E.dim // L.dim + 1 if L.dim else 2
    if n > 4:
        raise ValueError("degrees must be at most 3")
    T = truncated_poly_algebra(n, L.field)
    D0 = _nondegenerate_antiderivation(T)
    d = L.dim
    F = L.field
    # (id (x) D0)(e_i (x) t^p) = sum_q D0[q][p] e_i (x) t^(q+1)
    rows = [[F.zero] * E.dim for _ in range(E.dim)]
    for p in range(n - 1):
        for q in range(n - 1):
            c = D0.rows[q][p]
            if c:
                for i in range(d):
                    rows[q * d + i][p * d + i] = c
    DE = Matrix(rows, F, E.dim)
    rep_E = faithful_from_nondegenerate(E, adjoint_module(E), DE, full=False)
    rho = []
    for i in range(d):
        rho.append(rep_E.act(emb.apply(L.basis_vector(i))))
    return make_module(L, rep_E.dim, rho)


def semidirect_extension(L: AlgebraTable, D: Matrix, label: str = "D") -> AlgebraTable:
    """The commutative algebra L + K D with D*x = D(x) and D*D = 0.

    Whether this is mock-Lie depends on more than D being an antiderivation;
    use :func:`is_mock_lie` on the result.
    """
    n = L.dim
    products = {(i, j): dict(v) for i, j, v in L.nonzero_products() if i <= j}
    for x in range(n):
        col = {k: D.rows[k][x] for k in range(n) if D.rows[k][x]}
        if col:
            products[(x, n)] = col
    return AlgebraTable(n + 1, products, list(L.labels) + [label], L.field)
