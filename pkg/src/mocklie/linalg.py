"""Exact linear algebra over a :mod:`mocklie.field` field.

Dense matrices are immutable tuples of tuples.  Pivoting is deterministic:
the first nonzero entry in column order is used, so every basis computed
downstream is reproducible from run to run.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import QQ, Field

__all__ = [
    "Matrix",
    "rref",
    "nullspace",
    "solve",
    "rank",
    "sparse_rref",
    "SparseEchelon",
]


class Matrix:
    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence], field: Field = QQ, ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], field, n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in row) for row in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.field,
            self.nrows,
        )

    T = property(transpose)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} does not match {self.ncols} columns")
        zero = self.field.zero
        out = []
        for row in self.rows:
            s = zero
            for a, b in zip(row, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in matrix product")
            cols = other.transpose().rows
            return Matrix(
                [[_dot(row, col, self.field) for col in cols] for row in self.rows],
                self.field,
                other.ncols,
            )
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in matrix sum")
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.field,
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows], self.field, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix([[c * a for a in r] for r in self.rows], self.field, self.ncols)

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def rref(self) -> tuple["Matrix", list[int]]:
        reduced, pivots = _rref_rows([list(r) for r in self.rows], self.ncols, self.field)
        return Matrix(reduced, self.field, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple]:
        return nullspace(self)

    def solve(self, b: Sequence):
        return solve(self, b)


def _dot(u, v, field):
    s = field.zero
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def _rref_rows(rows: list[list], ncols: int, field: Field) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan elimination; zero rows end up at the bottom."""
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.one / rows[r][c]
        prow = [x * inv if x else x for x in rows[r]]
        rows[r] = prow
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in range(c, ncols):
                        if prow[j]:
                            row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    return m.rref()


def rank(m: Matrix) -> int:
    return m.rank()


def nullspace(m: Matrix) -> list[tuple]:
    """Kernel basis, one vector per free column, with a 1 in that column."""
    red, pivots = m.rref()
    field = m.field
    pivset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [field.zero] * m.ncols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -red.rows[r][free]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence):
    """Some x with m @ x == b, or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    field = m.field
    aug = [list(row) + [field(x)] for row, x in zip(m.rows, b)]
    red, pivots = _rref_rows(aug, m.ncols + 1, field)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [field.zero] * m.ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][m.ncols]
    return tuple(x)


# --------------------------------------------------------------------------
# sparse rows: dict column -> nonzero value


def _axpy(target: dict, f, row: dict) -> None:
    """target -= f * row, dropping cancelled entries."""
    for c, v in row.items():
        nv = target.get(c)
        if nv is None:
            target[c] = -f * v
        else:
            nv = nv - f * v
            if nv:
                target[c] = nv
            else:
                del target[c]


class SparseEchelon:
    """Incrementally maintained fully reduced echelon form of sparse rows.

    Columns are compared by their integer labels; the pivot of a row is its
    smallest column.  Every stored row is monic and reduced against all the
    others, so the stored set is a canonical basis of the row space.
    """

    def __init__(self, field: Field = QQ):
        self.field = field
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v}
        rows = self.rows
        while True:
            # eliminate pivot columns in increasing order
            hits = [c for c in row if c in rows]
            if not hits:
                return row
            for c in sorted(hits):
                f = row.get(c)
                if f:
                    _axpy(row, f, rows[c])

    def add(self, row: dict) -> int | None:
        """Insert a row; return its pivot column, or None if it was dependent."""
        row = self.reduce(row)
        if not row:
            return None
        piv = min(row)
        inv = self.field.one / row[piv]
        row = {c: v * inv for c, v in row.items()}
        for other in self.rows.values():
            f = other.get(piv)
            if f:
                _axpy(other, f, row)
        self.rows[piv] = row
        return piv

    def pivots(self) -> list[int]:
        return sorted(self.rows)


def sparse_rref(rows: Iterable[dict], field: Field = QQ) -> dict[int, dict]:
    ech = SparseEchelon(field)
    for row in rows:
        ech.add(row)
    return ech.rows
