"""Finite-dimensional algebras given by structure constants.

An :class:`AlgebraTable` stores ``e_i * e_j = sum_k c[i][j][k] e_k`` sparsely.
Vectors handed to and returned from the public API are dense tuples of field
elements; internally products run on sparse ``{index: coeff}`` dicts.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Mapping, Sequence

from .field import QQ, Field
from .linalg import Matrix, SparseEchelon

__all__ = [
    "AlgebraTable",
    "Subspace",
    "NotAnIdealError",
    "abelian",
    "multiply",
    "is_commutative",
    "is_mock_lie",
    "is_associative",
    "is_jordan",
    "is_nil3",
    "is_engel3",
    "center",
    "subspace_product",
    "lower_central_series",
    "nil_index",
    "ideal_generated_by",
    "subalgebra_generated_by",
    "is_ideal",
    "quotient",
    "direct_sum",
    "restrict",
    "quadratic_trichotomy",
    "rank_two_algebra",
]


class NotAnIdealError(ValueError):
    pass


def _clean(vec: Mapping) -> dict:
    return {k: v for k, v in vec.items() if v}


class AlgebraTable:
    """Structure constants of an algebra over an exact field.

    ``products`` maps a pair ``(i, j)`` of 0-based basis indices to a sparse
    vector ``{k: c}``.  With ``symmetric=True`` (the default) only one of
    ``(i, j)``/``(j, i)`` needs to be given and the other is filled in;
    conflicting entries raise.
    """

    def __init__(
        self,
        dim: int,
        products: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
        labels: Sequence[str] | None = None,
        field: Field = QQ,
        symmetric: bool = True,
    ):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.dim = dim
        self.field = field
        if labels is None:
            labels = [f"e{i + 1}" for i in range(dim)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != dim:
            raise ValueError(f"{len(labels)} labels for a {dim}-dimensional algebra")
        self.labels = labels
        table: list[list[dict]] = [[{} for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in (products or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"product index ({i}, {j}) out of range for dim {dim}")
            v = {}
            for k, c in vec.items():
                if not 0 <= k < dim:
                    raise IndexError(f"output index {k} out of range for dim {dim}")
                c = field(c)
                if c:
                    v[k] = c
            if symmetric and i != j and (j, i) in products and _clean(
                {k: field(c) for k, c in products[(j, i)].items()}
            ) != v:
                raise ValueError(f"conflicting products for ({i}, {j}) and ({j}, {i})")
            table[i][j] = v
            if symmetric:
                table[j][i] = v
        self._table = table

    # -- basic access -----------------------------------------------------

    def basis_product(self, i: int, j: int) -> dict:
        """Sparse ``e_i * e_j`` (do not mutate)."""
        return self._table[i][j]

    def structure_constant(self, i: int, j: int, k: int):
        return self._table[i][j].get(k, self.field.zero)

    def nonzero_products(self) -> Iterable[tuple[int, int, dict]]:
        for i in range(self.dim):
            for j in range(self.dim):
                if self._table[i][j]:
                    yield i, j, self._table[i][j]

    def products(self) -> dict[tuple[int, int], dict]:
        return {(i, j): dict(v) for i, j, v in self.nonzero_products()}

    def mul_sparse(self, u: Mapping[int, object], v: Mapping[int, object]) -> dict:
        out: dict = {}
        table = self._table
        for i, a in u.items():
            row = table[i]
            for j, b in v.items():
                prod = row[j]
                if not prod:
                    continue
                ab = a * b
                for k, c in prod.items():
                    t = out.get(k)
                    out[k] = ab * c if t is None else t + ab * c
        return _clean(out)

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        return self.to_dense(self.mul_sparse(self.to_sparse(x), self.to_sparse(y)))

    def to_sparse(self, x: Sequence) -> dict:
        if len(x) != self.dim:
            raise ValueError(f"vector of length {len(x)} does not match dimension {self.dim}")
        f = self.field
        return {i: f(c) for i, c in enumerate(x) if c}

    def to_dense(self, v: Mapping[int, object]) -> tuple:
        z = self.field.zero
        return tuple(v.get(i, z) for i in range(self.dim))

    def basis_vector(self, i: int) -> tuple:
        return self.to_dense({i: self.field.one})

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def left_multiplication(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> x * y`` acting on column vectors."""
        xs = self.to_sparse(x)
        cols = [self.to_dense(self.mul_sparse(xs, {j: self.field.one})) for j in range(self.dim)]
        return Matrix(
            [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)], self.field, self.dim
        )

    def whole(self) -> "Subspace":
        return Subspace.whole(self.dim, self.field)

    def zero_subspace(self) -> "Subspace":
        return Subspace.zero(self.dim, self.field)

    def change_field(self, field: Field) -> "AlgebraTable":
        return AlgebraTable(
            self.dim,
            {(i, j): {k: field(c) for k, c in v.items()} for i, j, v in self.nonzero_products()},
            self.labels,
            field,
            symmetric=False,
        )

    def relabel(self, labels: Sequence[str]) -> "AlgebraTable":
        return AlgebraTable(self.dim, self.products(), labels, self.field, symmetric=False)

    def permute(self, perm: Sequence[int]) -> "AlgebraTable":
        """Reorder the basis: new basis element ``a`` is old element ``perm[a]``."""
        inv = {old: new for new, old in enumerate(perm)}
        prods = {}
        for i, j, v in self.nonzero_products():
            prods[(inv[i], inv[j])] = {inv[k]: c for k, c in v.items()}
        return AlgebraTable(
            self.dim, prods, [self.labels[p] for p in perm], self.field, symmetric=False
        )

    def is_abelian(self) -> bool:
        return not any(True for _ in self.nonzero_products())

    def __eq__(self, other):
        if not isinstance(other, AlgebraTable):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.field == other.field
            and self.labels == other.labels
            and self._table == other._table
        )

    def __hash__(self):
        return hash((self.dim, self.labels))

    def __repr__(self):
        return f"AlgebraTable(dim={self.dim}, field={self.field}, labels={list(self.labels)})"

    def describe(self) -> str:
        """Nonzero products ``a*b = ...`` in basis labels, one per line."""
        lines = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                v = self._table[i][j]
                if v:
                    lines.append(
                        f"{self.labels[i]}*{self.labels[j]} = {format_vector(v, self.labels, self.field)}"
                    )
        return "\n".join(lines)


def format_vector(v: Mapping[int, object], labels: Sequence[str], field: Field = QQ) -> str:
    if not v:
        return "0"
    parts = []
    for k in sorted(v):
        c = v[k]
        s = field.format(c)
        if s == "1":
            term = labels[k]
        elif s == "-1":
            term = f"-{labels[k]}"
        else:
            term = f"{s}*{labels[k]}"
        parts.append(term)
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def abelian(n: int, field: Field = QQ, labels: Sequence[str] | None = None) -> AlgebraTable:
    return AlgebraTable(n, {}, labels, field)


def multiply(A: AlgebraTable, x: Sequence, y: Sequence) -> tuple:
    return A.mul(x, y)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of K^n stored by its canonical (reduced echelon) basis."""

    __slots__ = ("dim_ambient", "field", "_rows")

    def __init__(self, dim_ambient: int, rows: Mapping[int, Mapping[int, object]], field: Field = QQ):
        self.dim_ambient = dim_ambient
        self.field = field
        self._rows = {p: dict(r) for p, r in rows.items()}

    @classmethod
    def span(cls, dim_ambient: int, vectors: Iterable, field: Field = QQ) -> "Subspace":
        ech = SparseEchelon(field)
        for v in vectors:
            if isinstance(v, Mapping):
                ech.add(dict(v))
            else:
                if len(v) != dim_ambient:
                    raise ValueError("vector length does not match ambient dimension")
                ech.add({i: field(c) for i, c in enumerate(v) if c})
        return cls(dim_ambient, ech.rows, field)

    @classmethod
    def zero(cls, n: int, field: Field = QQ) -> "Subspace":
        return cls(n, {}, field)

    @classmethod
    def whole(cls, n: int, field: Field = QQ) -> "Subspace":
        return cls(n, {i: {i: field.one} for i in range(n)}, field)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self):
        return self.dim

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def sparse_basis(self) -> list[dict]:
        return [self._rows[p] for p in sorted(self._rows)]

    @property
    def basis(self) -> list[tuple]:
        z = self.field.zero
        return [
            tuple(r.get(i, z) for i in range(self.dim_ambient)) for r in self.sparse_basis()
        ]

    def reduce(self, v: Mapping[int, object]) -> dict:
        """Remainder of a sparse vector modulo the subspace (zero iff member)."""
        out = {k: c for k, c in v.items() if c}
        for p in sorted(self._rows):
            f = out.get(p)
            if f:
                for k, c in self._rows[p].items():
                    nv = out.get(k, self.field.zero) - f * c
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def coordinates(self, v: Mapping[int, object]) -> list | None:
        """Coefficients of ``v`` in :meth:`sparse_basis`, or None if not a member."""
        if self.reduce(v):
            return None
        z = self.field.zero
        return [v.get(p, z) for p in sorted(self._rows)]

    def contains(self, v) -> bool:
        if not isinstance(v, Mapping):
            v = {i: self.field(c) for i, c in enumerate(v) if c}
        return not self.reduce(v)

    __contains__ = contains

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self._rows.values())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(
            self.dim_ambient, self.sparse_basis() + other.sparse_basis(), self.field
        )

    def intersection(self, other: "Subspace") -> "Subspace":
        # kernel of [U; -V] restricted to the U-coordinates
        ub, vb = self.sparse_basis(), other.sparse_basis()
        if not ub or not vb:
            return Subspace.zero(self.dim_ambient, self.field)
        n = self.dim_ambient
        cols = ub + [{k: -c for k, c in r.items()} for r in vb]
        m = Matrix(
            [[col.get(i, self.field.zero) for col in cols] for i in range(n)], self.field, len(cols)
        )
        vecs = []
        for ker in m.nullspace():
            acc: dict = {}
            for a, r in zip(ker[: len(ub)], ub):
                if a:
                    for k, c in r.items():
                        acc[k] = acc.get(k, self.field.zero) + a * c
            vecs.append(acc)
        return Subspace.span(n, vecs, self.field)

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim_ambient == other.dim_ambient and self._rows == other._rows

    def __hash__(self):
        return hash((self.dim_ambient, tuple(sorted(self._rows))))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.dim_ambient})"


def _as_subspace(A: AlgebraTable, S) -> Subspace:
    if isinstance(S, Subspace):
        if S.dim_ambient != A.dim:
            raise ValueError("subspace lives in a different ambient space")
        return S
    return Subspace.span(A.dim, S, A.field)


# ---------------------------------------------------------------------------
# axioms


def is_commutative(A: AlgebraTable) -> bool:
    return all(
        A.basis_product(i, j) == A.basis_product(j, i)
        for i in range(A.dim)
        for j in range(i + 1, A.dim)
    )


def _sub(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        nv = out.get(k)
        nv = -c if nv is None else nv - c
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _add(*vs: dict) -> dict:
    out: dict = {}
    for v in vs:
        for k, c in v.items():
            nv = out.get(k)
            out[k] = c if nv is None else nv + c
    return _clean(out)


def jacobi_failures(A: AlgebraTable, limit: int = 1):
    """Basis triples where (xy)z + (zx)y + (yz)x is nonzero (commutative A)."""
    bad = []
    one = A.field.one
    e = [{i: one} for i in range(A.dim)]
    prods = [[A.basis_product(i, j) for j in range(A.dim)] for i in range(A.dim)]
    # fully symmetric in its arguments once commutativity holds
    for i, j, k in itertools.combinations_with_replacement(range(A.dim), 3):
        val = _add(
            A.mul_sparse(prods[i][j], e[k]),
            A.mul_sparse(prods[k][i], e[j]),
            A.mul_sparse(prods[j][k], e[i]),
        )
        if val:
            bad.append((i, j, k))
            if len(bad) >= limit:
                break
    return bad


def is_mock_lie(A: AlgebraTable) -> bool:
    """Commutative and Jacobi on every basis triple (enough by trilinearity)."""
    return is_commutative(A) and not jacobi_failures(A)


def is_associative(A: AlgebraTable) -> bool:
    one = A.field.one
    for i in range(A.dim):
        for j in range(A.dim):
            ij = A.basis_product(i, j)
            for k in range(A.dim):
                left = A.mul_sparse(ij, {k: one})
                right = A.mul_sparse({i: one}, A.basis_product(j, k))
                if _sub(left, right):
                    return False
    return True


def associator_witness(A: AlgebraTable):
    one = A.field.one
    for i in range(A.dim):
        for j in range(A.dim):
            ij = A.basis_product(i, j)
            for k in range(A.dim):
                diff = _sub(A.mul_sparse(ij, {k: one}), A.mul_sparse({i: one}, A.basis_product(j, k)))
                if diff:
                    return (i, j, k), A.to_dense(diff)
    return None


def _holds(A: AlgebraTable, name: str) -> bool:
    from .identities import builtin_identity, holds_identically

    return holds_identically(A, builtin_identity(name))


def is_jordan(A: AlgebraTable) -> bool:
    """Commutative and the fully linearized Jordan identity vanishes on basis tuples."""
    return is_commutative(A) and _holds(A, "jordan")


def is_nil3(A: AlgebraTable) -> bool:
    return _holds(A, "nil3")


def is_engel3(A: AlgebraTable) -> bool:
    return _holds(A, "engel3")


# ---------------------------------------------------------------------------
# subspaces built from the multiplication


def center(A: AlgebraTable) -> Subspace:
    """Annihilator {z : z*e_i = 0 for all i}."""
    n = A.dim
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append([A.structure_constant(j, i, k) for j in range(n)])
    if not rows:
        return Subspace.whole(n, A.field)
    kernel = Matrix(rows, A.field, n).nullspace()
    return Subspace.span(n, kernel, A.field)


def subspace_product(A: AlgebraTable, U, V) -> Subspace:
    U, V = _as_subspace(A, U), _as_subspace(A, V)
    vecs = [A.mul_sparse(u, v) for u in U.sparse_basis() for v in V.sparse_basis()]
    return Subspace.span(A.dim, vecs, A.field)


def lower_central_series(A: AlgebraTable, max_terms: int | None = None) -> list[Subspace]:
    """[L^1, L^2, ...] ending at the first zero term or when the chain stabilizes."""
    L = A.whole()
    series = [L]
    while not series[-1].is_zero():
        nxt = subspace_product(A, series[-1], L)
        if nxt == series[-1]:
            break
        series.append(nxt)
        if max_terms is not None and len(series) >= max_terms:
            break
    return series


def power(A: AlgebraTable, n: int) -> Subspace:
    if n < 1:
        raise ValueError("powers start at L^1")
    series = lower_central_series(A)
    if n <= len(series):
        return series[n - 1]
    # chain already stabilized (or hit zero)
    return series[-1]


def nil_index(A: AlgebraTable) -> int | None:
    """Least n with L^n = 0, or None if the algebra is not nilpotent.

    The zero algebra has index 1; a nonzero abelian algebra has index 2.
    """
    series = lower_central_series(A)
    if series[-1].is_zero():
        return len(series)
    return None


def ideal_generated_by(A: AlgebraTable, S) -> Subspace:
    I = _as_subspace(A, S)
    L = A.whole()
    while True:
        nxt = I + subspace_product(A, I, L)
        if nxt == I:
            return I
        I = nxt


def subalgebra_generated_by(A: AlgebraTable, S) -> Subspace:
    B = _as_subspace(A, S)
    while True:
        nxt = B + subspace_product(A, B, B)
        if nxt == B:
            return B
        B = nxt


def is_ideal(A: AlgebraTable, I) -> bool:
    I = _as_subspace(A, I)
    return subspace_product(A, I, A.whole()) <= I


def quotient(A: AlgebraTable, I) -> AlgebraTable:
    """A/I on the complement spanned by the non-pivot standard basis vectors of I."""
    I = _as_subspace(A, I)
    if not is_ideal(A, I):
        raise NotAnIdealError("subspace is not an ideal: A*I is not contained in I")
    pivots = set(I.pivots())
    keep = [i for i in range(A.dim) if i not in pivots]
    pos = {old: new for new, old in enumerate(keep)}
    prods = {}
    for a, i in enumerate(keep):
        for b in range(a, len(keep)):
            j = keep[b]
            r = I.reduce(A.basis_product(i, j))
            if r:
                prods[(a, b)] = {pos[k]: c for k, c in r.items()}
    return AlgebraTable(len(keep), prods, [A.labels[i] for i in keep], A.field)


def restrict(A: AlgebraTable, S) -> AlgebraTable:
    """The subalgebra S as an algebra in its canonical basis."""
    S = _as_subspace(A, S)
    basis = S.sparse_basis()
    prods = {}
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            v = A.mul_sparse(basis[a], basis[b])
            coords = S.coordinates(v)
            if coords is None:
                raise ValueError("subspace is not closed under multiplication")
            vec = {k: c for k, c in enumerate(coords) if c}
            if vec:
                prods[(a, b)] = vec
    labels = [f"s{i + 1}" for i in range(len(basis))]
    return AlgebraTable(len(basis), prods, labels, A.field, symmetric=True)


def direct_sum(*algebras: AlgebraTable) -> AlgebraTable:
    if not algebras:
        raise ValueError("direct_sum needs at least one algebra")
    field = algebras[0].field
    prods: dict = {}
    labels: list[str] = []
    offset = 0
    for A in algebras:
        if A.field != field:
            raise ValueError("direct sum of algebras over different fields")
        for i, j, v in A.nonzero_products():
            prods[(i + offset, j + offset)] = {k + offset: c for k, c in v.items()}
        labels.extend(A.labels)
        offset += A.dim
    if len(set(labels)) != len(labels):
        seen: dict[str, int] = {}
        fresh = []
        for s in labels:
            seen[s] = seen.get(s, 0) + 1
            fresh.append(s if seen[s] == 1 else f"{s}_{seen[s]}")
        labels = fresh
    return AlgebraTable(offset, prods, labels, field, symmetric=False)


# ---------------------------------------------------------------------------
# rank <= 2 commutative algebras


def rank_two_algebra(n: int, field: Field = QQ) -> AlgebraTable:
    """V + K a with V trivial, a*x = x for x in V and a*a = 2a (basis: a, v1, ...)."""
    if n < 1:
        raise ValueError("need at least the element a")
    prods = {(0, 0): {0: 2}}
    for i in range(1, n):
        prods[(0, i)] = {i: 1}
    return AlgebraTable(n, prods, ["a"] + [f"v{i}" for i in range(1, n)], field)


def _independent(x: dict, y: dict) -> bool:
    if not x or not y:
        return False
    # x, y nonzero: dependent iff y = lambda x
    k = next(iter(x))
    lam = y.get(k)
    if lam is None:
        return True
    lam = lam / x[k]
    return bool(_sub(y, {i: lam * c for i, c in x.items()}))


def quadratic_trichotomy(A: AlgebraTable, seed: int = 0, tries: int = 200):
    """Classify a commutative algebra by the rank <= 2 trichotomy.

    Returns ``("trivial", None)``, ``("rank2", alpha)`` where
    ``x*y = alpha(y) x + alpha(x) y``, or ``("independent", x)`` with ``x`` a
    dense vector such that x and x*x are linearly independent.
    """
    f = A.field
    n = A.dim
    # fit x*y = alpha(y) x + alpha(x) y from the squares of basis vectors
    alpha = []
    fits = True
    for i in range(n):
        sq = A.basis_product(i, i)
        extra = {k: c for k, c in sq.items() if k != i}
        if extra:
            fits = False
            break
        alpha.append(sq.get(i, f.zero) / 2)
    if fits:
        for i in range(n):
            for j in range(i + 1, n):
                expect = _clean({i: alpha[j], j: alpha[i]})
                if A.basis_product(i, j) != expect:
                    fits = False
                    break
            if not fits:
                break
    if fits:
        if all(not a for a in alpha):
            return "trivial", None
        return "rank2", tuple(alpha)

    one = f.one
    candidates: list[dict] = [{i: one} for i in range(n)]
    candidates += [{i: one, j: one} for i, j in itertools.combinations(range(n), 2)]
    candidates += [{i: one, j: -one} for i, j in itertools.combinations(range(n), 2)]
    for x in candidates:
        if _independent(x, A.mul_sparse(x, x)):
            return "independent", A.to_dense(x)
    rng = random.Random(seed)
    for _ in range(tries):
        x = _clean({i: f(rng.randint(-5, 5)) for i in range(n)})
        if _independent(x, A.mul_sparse(x, x)):
            return "independent", A.to_dense(x)
    raise RuntimeError("no witness found although the algebra is not of rank <= 2")
