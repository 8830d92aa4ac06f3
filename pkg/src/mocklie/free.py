"""Degree-capped quotients of free mock-Lie algebras.

``build_free_quotient(("a", "b", "c"), (3, 3, 2))`` constructs the free
mock-Lie algebra on a, b, c modulo all words with more than 3 a's, more than
3 b's or more than 2 c's, as an explicit structure-constant table.

The construction goes one multidegree at a time.  For multidegree ``alpha``
the candidate monomials are the products ``u*v`` of already reduced basis
words whose multidegrees add up to ``alpha``.  The relations are the Jacobi
expressions ``(u*v)*w + (w*u)*v + (v*w)*u`` over reduced basis words, with
the inner products rewritten through the table built so far.  Row reduction
picks the new basis words and expresses every candidate in them.  Jacobi
instances on non-basis words are linear consequences of these, because the
lower degrees are already reduced.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import AlgebraTable
from .field import QQ, Field
from .linalg import SparseEchelon
from .words import Word, degree, multidegree, product, word_key, word_str

log = logging.getLogger(__name__)

__all__ = [
    "FreeQuotientResult",
    "enumerate_words",
    "build_free_quotient",
    "structure_constant_profile",
]


@dataclass
class FreeQuotientResult:
    algebra: AlgebraTable
    basis_words: list[Word]
    generator_indices: list[int]
    generators: tuple[str, ...]
    caps: tuple[int, ...]
    multidegrees: list[tuple[int, ...]] = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def word_strings(self) -> list[str]:
        return [word_str(w, self.generators) for w in self.basis_words]

    def grading(self) -> list[int]:
        """Total degree of each basis element (an N-grading of the algebra)."""
        return [sum(md) for md in self.multidegrees]


def _check_caps(generators: Sequence[str], caps: Sequence[int]) -> tuple[int, ...]:
    caps = tuple(int(c) for c in caps)
    if len(caps) != len(generators):
        raise ValueError(f"{len(generators)} generators but {len(caps)} caps")
    if any(c <= 0 for c in caps):
        raise ValueError("every cap must be positive (a zero cap removes its generator)")
    if len(set(generators)) != len(generators):
        raise ValueError("generator names must be distinct")
    return caps


def _fits(md: Sequence[int], caps: Sequence[int]) -> bool:
    return all(a <= c for a, c in zip(md, caps))


def _add_md(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def enumerate_words(generators: Sequence[str], caps: Sequence[int]) -> list[Word]:
    """All canonical commutative words with multidegree bounded by ``caps``.

    Sorted by total degree, then multidegree (more of the earlier generators
    first), then word order.
    """
    caps = _check_caps(generators, caps)
    n = len(generators)
    by_degree: dict[int, list[Word]] = {1: list(range(n))}
    total = sum(caps)
    for d in range(2, total + 1):
        words = set()
        for du in range(1, d // 2 + 1):
            dv = d - du
            for u in by_degree.get(du, ()):
                mu = multidegree(u, n)
                for v in by_degree.get(dv, ()):
                    if du == dv and word_key(v) < word_key(u):
                        continue
                    if _fits(_add_md(mu, multidegree(v, n)), caps):
                        words.add(product(u, v))
        by_degree[d] = sorted(words, key=word_key)
    out = [w for d in sorted(by_degree) for w in by_degree[d]]
    out.sort(key=lambda w: (degree(w), _md_rank(multidegree(w, n)), word_key(w)))
    return out


def _md_rank(md: Sequence[int]) -> tuple[int, ...]:
    # (1,0,0) before (0,1,0): earlier generators first
    return tuple(-m for m in md)


def _multidegrees_of_total(caps: Sequence[int], total: int):
    ranges = [range(c + 1) for c in caps]
    for md in itertools.product(*ranges):
        if sum(md) == total:
            yield md


def build_free_quotient(
    generators: Sequence[str],
    caps: Sequence[int],
    field: Field = QQ,
    keep: str = "large",
) -> FreeQuotientResult:
    """Build the capped free mock-Lie quotient.

    ``keep`` selects which candidate monomials survive as basis words when
    the relations allow a choice: ``"small"`` keeps the smallest words in
    word order, ``"large"`` (the default) the largest.  With ``"large"`` the
    (3, 3, 2) algebra has all structure constants in {+-2, +-1, +-1/2}.
    """
    generators = tuple(str(g) for g in generators)
    caps = _check_caps(generators, caps)
    if keep not in ("small", "large"):
        raise ValueError("keep must be 'small' or 'large'")
    n = len(generators)
    one = field.one

    words: list[Word] = list(range(n))
    mds: list[tuple[int, ...]] = [tuple(int(g == i) for g in range(n)) for i in range(n)]
    by_md: dict[tuple[int, ...], list[int]] = {md: [i] for i, md in enumerate(mds)}
    # sparse products between basis indices; absent = 0
    table: dict[tuple[int, int], dict[int, object]] = {}

    def prod_of(i: int, j: int) -> dict:
        return table.get((i, j) if i <= j else (j, i), {})

    for total in range(2, sum(caps) + 1):
        for alpha in sorted(_multidegrees_of_total(caps, total), reverse=True):
            # candidate monomials u*v with md(u) + md(v) = alpha
            cand: dict[tuple[int, int], Word] = {}
            for i, mi in enumerate(mds):
                if not _fits(mi, alpha):
                    continue
                rest = tuple(a - b for a, b in zip(alpha, mi))
                for j in by_md.get(rest, ()):
                    if j < i:
                        continue
                    cand[(i, j)] = product(words[i], words[j])
            if not cand:
                continue
            order = sorted(cand, key=lambda p: word_key(cand[p]))
            if keep == "large":
                order.reverse()
            col = {p: c for c, p in enumerate(order)}

            def term(left: dict, w: int) -> dict:
                # (sum_k c_k b_k) * w expressed in candidate columns
                out: dict = {}
                for k, c in left.items():
                    key = (k, w) if k <= w else (w, k)
                    cc = col[key]
                    out[cc] = out.get(cc, field.zero) + c
                return out

            ech = SparseEchelon(field)
            for i in range(len(words)):
                mi = mds[i]
                if not _fits(mi, alpha):
                    continue
                for j in range(i, len(words)):
                    mij = _add_md(mi, mds[j])
                    if not _fits(mij, alpha):
                        continue
                    rest = tuple(a - b for a, b in zip(alpha, mij))
                    if sum(rest) == 0:
                        continue
                    for k in by_md.get(rest, ()):
                        if k < j:
                            continue
                        row: dict = {}
                        for left, w in (
                            (prod_of(i, j), k),
                            (prod_of(k, i), j),
                            (prod_of(j, k), i),
                        ):
                            for cc, c in term(left, w).items():
                                row[cc] = row.get(cc, field.zero) + c
                        ech.add(row)

            pivots = ech.rows
            new_index: dict[int, int] = {}
            for c, p in enumerate(order):
                if c in pivots:
                    continue
                new_index[c] = len(words)
                words.append(cand[p])
                mds.append(alpha)
                by_md.setdefault(alpha, []).append(new_index[c])
            for c, p in enumerate(order):
                if c in pivots:
                    expr = {
                        new_index[fc]: -v for fc, v in pivots[c].items() if fc != c and v
                    }
                else:
                    expr = {new_index[c]: one}
                if expr:
                    table[p] = expr
            log.debug("multidegree %s: %d candidates, %d relations rank, %d new basis words",
                      alpha, len(order), len(pivots), len(order) - len(pivots))

    # regroup basis: total degree, then multidegree, then word order
    perm = sorted(
        range(len(words)), key=lambda i: (sum(mds[i]), _md_rank(mds[i]), word_key(words[i]))
    )
    pos = {old: new for new, old in enumerate(perm)}
    products = {}
    for (i, j), v in table.items():
        a, b = pos[i], pos[j]
        products[(min(a, b), max(a, b))] = {pos[k]: c for k, c in v.items()}
    words = [words[i] for i in perm]
    mds = [mds[i] for i in perm]
    labels = [word_str(w, generators) for w in words]
    algebra = AlgebraTable(len(words), products, labels, field)
    return FreeQuotientResult(
        algebra=algebra,
        basis_words=words,
        generator_indices=list(range(n)),
        generators=generators,
        caps=caps,
        multidegrees=mds,
    )


def structure_constant_profile(result) -> set:
    """Distinct nonzero structure constants of a free quotient (or any table)."""
    A = result.algebra if isinstance(result, FreeQuotientResult) else result
    return {c for _, _, v in A.nonzero_products() for c in v.values()}
