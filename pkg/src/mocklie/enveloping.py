"""Universal enveloping algebras through noncommutative Groebner bases.

For a commutative algebra L with basis x_1..x_n, U(L) is the free associative
algebra on the x_i modulo

    x_i x_j + x_j x_i - 2 x_i*x_j   (i < j)
    x_i x_i - x_i*x_i

Words are tuples of 0-based generator indices.  The monomial order compares
length first, then left-lexicographically with x_1 > x_2 > ... (a smaller
index is a larger letter).  Completion is the usual overlap (composition)
algorithm, always resolving the shortest overlap first.
"""

from __future__ import annotations

import heapq
import logging
import os
import pickle
import time
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .algebra import AlgebraTable, Subspace, is_commutative, power
from .field import QQ, Field

log = logging.getLogger(__name__)

__all__ = [
    "NCPoly",
    "GroebnerBasis",
    "BudgetExhausted",
    "word_order_key",
    "enveloping_relations",
    "complete",
    "enveloping_basis",
    "normal_words",
    "dim_u",
    "is_special",
    "kernel_of_iota",
    "kernel_degree_bound",
]

NCWord = tuple


def word_order_key(w: NCWord) -> tuple:
    """Sort key: larger key means larger word."""
    return (len(w), tuple(-i for i in w))


class BudgetExhausted(RuntimeError):
    def __init__(self, msg: str, partial: "GroebnerBasis | None" = None):
        super().__init__(msg)
        self.partial = partial


class NCPoly:
    """Noncommutative polynomial: ``{word: coeff}`` with nonzero coefficients."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: Mapping[NCWord, object] | None = None, field: Field = QQ):
        self.field = field
        self.terms = {tuple(w): field(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: dict, field: Field) -> "NCPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p.field = field
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def words(self) -> list[NCWord]:
        """Words in descending order."""
        return sorted(self.terms, key=word_order_key, reverse=True)

    @property
    def lead_word(self) -> NCWord:
        return max(self.terms, key=word_order_key)

    @property
    def lead_coeff(self):
        return self.terms[self.lead_word]

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def monic(self) -> "NCPoly":
        if not self.terms:
            return self
        inv = self.field.one / self.lead_coeff
        return NCPoly._raw({w: c * inv for w, c in self.terms.items()}, self.field)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        return NCPoly._raw(_combine(self.terms, other.terms, self.field.one), self.field)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return NCPoly._raw(_combine(self.terms, other.terms, -self.field.one), self.field)

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw({w: -c for w, c in self.terms.items()}, self.field)

    def scale(self, c) -> "NCPoly":
        c = self.field(c)
        if not c:
            return NCPoly({}, self.field)
        return NCPoly._raw({w: c * v for w, v in self.terms.items()}, self.field)

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                out[w] = out.get(w, self.field.zero) + a * b
        return NCPoly._raw({w: c for w, c in out.items() if c}, self.field)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.words():
            c = self.field.format(self.terms[w])
            mono = "*".join(names[i] if names else f"x{i + 1}" for i in w) or "1"
            if not w:
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            elif c == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"NCPoly({self.to_str()})"


def _combine(a: dict, b: dict, s) -> dict:
    out = dict(a)
    for w, c in b.items():
        nv = out.get(w)
        nv = s * c if nv is None else nv + s * c
        if nv:
            out[w] = nv
        else:
            out.pop(w, None)
    return out


@dataclass
class GroebnerBasis:
    generators: list[NCPoly]
    ngens: int
    field: Field = QQ
    max_degree_reached: int = 0
    complete: bool = True
    names: tuple[str, ...] | None = None
    stats: dict = dc_field(default_factory=dict)

    def lead_words(self) -> list[NCWord]:
        return [g.lead_word for g in self.generators]

    def degree_one(self) -> list[NCPoly]:
        return [g for g in self.generators if len(g.lead_word) <= 1]

    def reduce(self, p: NCPoly) -> NCPoly:
        red = _Reducer(self.ngens, self.field)
        for g in self.generators:
            red.add(g.terms)
        return NCPoly._raw(red.normal_form(dict(p.terms)), self.field)

    def to_lines(self) -> list[str]:
        return [g.to_str(self.names) for g in self.generators]


# ---------------------------------------------------------------------------
# reduction machinery


class _Reducer:
    """Lead-word index plus full (tail) reduction."""

    def __init__(self, ngens: int, field: Field):
        self.ngens = ngens
        self.field = field
        self.polys: list[dict | None] = []
        self.lead: list[NCWord | None] = []
        self.by_lead: dict[NCWord, int] = {}
        self.max_len = 0

    def add(self, terms: dict) -> int:
        lw = max(terms, key=word_order_key)
        idx = len(self.polys)
        self.polys.append(terms)
        self.lead.append(lw)
        self.by_lead[lw] = idx
        self.max_len = max(self.max_len, len(lw))
        return idx

    def remove(self, idx: int) -> None:
        lw = self.lead[idx]
        if self.by_lead.get(lw) == idx:
            del self.by_lead[lw]
        self.polys[idx] = None
        self.lead[idx] = None

    def alive(self) -> list[int]:
        return [i for i, p in enumerate(self.polys) if p is not None]

    def find_divisor(self, w: NCWord, skip: int | None = None):
        by_lead = self.by_lead
        n = len(w)
        top = min(self.max_len, n)
        for length in range(1, top + 1):
            for start in range(0, n - length + 1):
                idx = by_lead.get(w[start:start + length])
                if idx is not None and idx != skip:
                    return idx, start
        return None

    def normal_form(self, terms: dict, skip: int | None = None) -> dict:
        """Fully reduced form: no term contains a lead word."""
        poly = dict(terms)
        heap = [(_neg_key(w), w) for w in poly]
        heapq.heapify(heap)
        result: dict = {}
        while heap:
            _, w = heapq.heappop(heap)
            c = poly.pop(w, None)
            if c is None:
                continue
            hit = self.find_divisor(w, skip)
            if hit is None:
                result[w] = c
                continue
            idx, start = hit
            g = self.polys[idx]
            lw = self.lead[idx]
            f = c / g[lw]
            left, right = w[:start], w[start + len(lw):]
            for gw, gc in g.items():
                if gw == lw:
                    continue
                nw = left + gw + right
                old = poly.get(nw)
                if old is None:
                    poly[nw] = -f * gc
                    heapq.heappush(heap, (_neg_key(nw), nw))
                else:
                    nv = old - f * gc
                    if nv:
                        poly[nw] = nv
                    else:
                        del poly[nw]
        return result


def _neg_key(w: NCWord) -> tuple:
    return (-len(w), tuple(w))


def _monic(terms: dict, field: Field) -> dict:
    lw = max(terms, key=word_order_key)
    inv = field.one / terms[lw]
    return {w: c * inv for w, c in terms.items()}


def _overlaps(u: NCWord, v: NCWord):
    """Lengths k with suffix(u, k) == prefix(v, k), 0 < k < min(len(u), len(v))."""
    top = min(len(u), len(v))
    for k in range(1, top):
        if u[len(u) - k:] == v[:k]:
            yield k


# ---------------------------------------------------------------------------
# relations and completion


def enveloping_relations(L: AlgebraTable) -> list[NCPoly]:
    if not is_commutative(L):
        raise ValueError("enveloping relations need a commutative algebra")
    f = L.field
    two = f(2)
    rels = []
    for i in range(L.dim):
        for j in range(i, L.dim):
            prod = L.basis_product(i, j)
            if i == j:
                terms = {(i, i): f.one}
                for k, c in prod.items():
                    terms[(k,)] = terms.get((k,), f.zero) - c
            else:
                terms = {(i, j): f.one, (j, i): f.one}
                for k, c in prod.items():
                    terms[(k,)] = terms.get((k,), f.zero) - two * c
            rels.append(NCPoly(terms, f))
    return rels


class _Completion:
    """Resumable completion state: lead-word index, pending and postponed overlaps."""

    def __init__(self, relations: Sequence[NCPoly], ngens: int, field: Field):
        self.field = field
        self.ngens = ngens
        self.reducer = _Reducer(ngens, field)
        self.pairs: list = []
        self.deferred: list = []
        self.counter = 0
        self.max_seen = 0
        self.processed = 0
        for r in sorted(relations, key=lambda p: word_order_key(p.lead_word)):
            self._insert(dict(r.terms))

    def _push_pairs(self, idx: int) -> None:
        red = self.reducer
        u = red.lead[idx]
        for j in red.alive():
            v = red.lead[j]
            for k in _overlaps(u, v):
                heapq.heappush(self.pairs, (len(u) + len(v) - k, self.counter, idx, j, k))
                self.counter += 1
            if j != idx:
                for k in _overlaps(v, u):
                    heapq.heappush(self.pairs, (len(u) + len(v) - k, self.counter, j, idx, k))
                    self.counter += 1

    def _insert(self, terms: dict) -> None:
        """Add a polynomial; evict elements whose lead word it divides."""
        red = self.reducer
        todo = [terms]
        while todo:
            t = red.normal_form(todo.pop())
            if not t:
                continue
            t = _monic(t, self.field)
            lw = max(t, key=word_order_key)
            idx = red.add(t)
            for j in red.alive():
                if j == idx:
                    continue
                v = red.lead[j]
                if len(v) >= len(lw) and _contains(v, lw):
                    old = red.polys[j]
                    red.remove(j)
                    todo.append(old)
            self._push_pairs(idx)

    def _live(self, item) -> bool:
        red = self.reducer
        return red.polys[item[2]] is not None and red.polys[item[3]] is not None

    def run(self, max_deg: int, checkpoint=None, checkpoint_every: float = 300.0,
            fingerprint=None) -> int:
        """Resolve every overlap of length <= max_deg; return how many longer ones remain."""
        for item in self.deferred:
            heapq.heappush(self.pairs, item)
        self.deferred = []
        red = self.reducer
        field = self.field
        last_save = time.monotonic()
        while self.pairs:
            item = heapq.heappop(self.pairs)
            length, _, i, j, k = item
            if not self._live(item):
                continue
            if length > max_deg:
                self.deferred.append(item)
                continue
            self.max_seen = max(self.max_seen, length)
            u = red.lead[i]
            right = red.lead[j][k:]
            left = u[: len(u) - k]
            s: dict = {}
            for w, c in red.polys[i].items():
                s[w + right] = c
            for w, c in red.polys[j].items():
                nw = left + w
                nv = s.get(nw, field.zero) - c
                if nv:
                    s[nw] = nv
                else:
                    s.pop(nw, None)
            self.processed += 1
            if s:
                nf = red.normal_form(s)
                if nf:
                    self._insert(nf)
            if checkpoint is not None and time.monotonic() - last_save > checkpoint_every:
                _save(checkpoint, fingerprint, self)
                last_save = time.monotonic()
                log.info("checkpoint: %d elements, %d overlaps pending",
                         len(red.alive()), len(self.pairs))
        self.deferred = [d for d in self.deferred if self._live(d)]
        if checkpoint is not None:
            _save(checkpoint, fingerprint, self)
        return len(self.deferred)

    def basis(self, names=None) -> GroebnerBasis:
        done = not self.deferred
        red = self.reducer
        gens = _interreduce(red, self.field) if done else [red.polys[i] for i in red.alive()]
        return GroebnerBasis(
            generators=[NCPoly._raw(t, self.field) for t in gens],
            ngens=self.ngens,
            field=self.field,
            max_degree_reached=self.max_seen,
            complete=done,
            names=tuple(names) if names else None,
            stats={"overlaps_resolved": self.processed},
        )


def _contains(w: NCWord, s: NCWord) -> bool:
    m = len(s)
    return any(w[i:i + m] == s for i in range(len(w) - m + 1))


def _interreduce(red: _Reducer, field: Field) -> list[dict]:
    alive = sorted(red.alive(), key=lambda i: word_order_key(red.lead[i]))
    for i in alive:
        terms = red.polys[i]
        lw = red.lead[i]
        if red.find_divisor(lw, skip=i) is not None:
            red.remove(i)
            continue
        tail = {w: c for w, c in terms.items() if w != lw}
        new = red.normal_form(tail, skip=i)
        new[lw] = terms[lw]
        red.polys[i] = _monic(new, field)
    out = [red.polys[i] for i in red.alive()]
    out.sort(key=lambda t: word_order_key(max(t, key=word_order_key)))
    return out


def _start(relations, ngens, field, checkpoint) -> tuple["_Completion", tuple]:
    fingerprint = (ngens, str(field), _rel_fingerprint(relations))
    if checkpoint is not None and os.path.exists(checkpoint):
        with open(checkpoint, "rb") as fh:
            saved = pickle.load(fh)
        if saved.get("fingerprint") == fingerprint:
            log.info("resuming completion from %s", checkpoint)
            return saved["state"], fingerprint
        log.warning("checkpoint %s belongs to a different computation; ignoring it", checkpoint)
    return _Completion(relations, ngens, field), fingerprint


def complete(
    relations: Iterable[NCPoly],
    max_deg: int,
    ngens: int | None = None,
    field: Field | None = None,
    names: Sequence[str] | None = None,
    checkpoint: str | os.PathLike | None = None,
    checkpoint_every: float = 300.0,
) -> GroebnerBasis:
    """Complete a two-sided relation set to a reduced Groebner basis.

    Overlaps whose word is longer than ``max_deg`` are postponed; if any are
    left once everything shorter is resolved, :class:`BudgetExhausted` is
    raised with the partial basis attached.
    """
    relations = [r for r in relations if not r.is_zero()]
    if field is None:
        field = relations[0].field if relations else QQ
    if ngens is None:
        ngens = 1 + max((i for r in relations for w in r.terms for i in w), default=-1)
    if max_deg < 2:
        raise ValueError("max_deg must be at least 2")
    comp, fp = _start(relations, ngens, field, checkpoint)
    left = comp.run(max_deg, checkpoint, checkpoint_every, fp)
    gb = comp.basis(names)
    if left:
        raise BudgetExhausted(f"{left} overlaps longer than {max_deg} remain", partial=gb)
    return gb


def _rel_fingerprint(relations: Sequence[NCPoly]) -> tuple:
    return tuple(sorted((tuple(sorted((w, str(c)) for w, c in r.terms.items())) for r in relations)))


def _save(path, fingerprint, state) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        pickle.dump({"fingerprint": fingerprint, "state": state}, fh)
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# the enveloping algebra of L


def default_max_deg(L: AlgebraTable) -> int:
    return 2 * L.dim + 4


def enveloping_basis(
    L: AlgebraTable,
    max_deg: int | None = None,
    grow: bool = True,
    checkpoint: str | os.PathLike | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the defining ideal of U(L).

    Starts at ``max_deg`` (default ``2*dim + 4``) and doubles the budget while
    overlaps remain, unless ``grow`` is false.
    """
    deg = max(max_deg or default_max_deg(L), 2)
    rels = enveloping_relations(L)
    comp, fp = _start(rels, L.dim, L.field, checkpoint)
    while True:
        left = comp.run(deg, checkpoint, fingerprint=fp)
        if not left:
            gb = comp.basis(L.labels)
            gb.stats["budget"] = deg
            return gb
        if not grow:
            raise BudgetExhausted(f"{left} overlaps longer than {deg} remain",
                                  partial=comp.basis(L.labels))
        deg *= 2
        log.info("budget exhausted, raising max degree to %d", deg)


def normal_words(gb: GroebnerBasis, limit: int = 10**6) -> list[NCWord]:
    """Words avoiding every lead word, shortest first (the empty word included)."""
    if not gb.complete:
        raise BudgetExhausted("normal words need a complete basis")
    leads = set(gb.lead_words())
    if () in leads:
        return []
    maxlen = max((len(w) for w in leads), default=0)
    out: list[NCWord] = [()]
    level: list[NCWord] = [()]
    while level:
        nxt = []
        for w in level:
            for x in range(gb.ngens):
                nw = w + (x,)
                # only suffixes can newly contain a lead word
                if any(nw[len(nw) - m:] in leads for m in range(1, min(maxlen, len(nw)) + 1)):
                    continue
                nxt.append(nw)
        out.extend(nxt)
        if len(out) > limit:
            raise RuntimeError("quotient looks infinite-dimensional (normal word limit hit)")
        level = nxt
    return out


def dim_u(L: AlgebraTable | GroebnerBasis, max_deg: int | None = None) -> int:
    gb = L if isinstance(L, GroebnerBasis) else enveloping_basis(L, max_deg)
    return len(normal_words(gb))


def kernel_of_iota(L: AlgebraTable, gb: GroebnerBasis | None = None) -> Subspace:
    """Kernel of L -> U(L): spanned by the length-one elements of the basis."""
    gb = gb or enveloping_basis(L)
    vecs = []
    for g in gb.degree_one():
        if () in g.terms:
            raise ValueError("defining ideal contains a constant: U(L) = 0")
        vecs.append({w[0]: c for w, c in g.terms.items()})
    return Subspace.span(L.dim, vecs, L.field)


def is_special(L: AlgebraTable, gb: GroebnerBasis | None = None):
    """``(True, None)`` if L embeds into U(L), else ``(False, witnesses)``.

    The witnesses are the length-one basis elements, i.e. elements of L that
    vanish in U(L), as dense vectors.
    """
    gb = gb or enveloping_basis(L)
    deg1 = gb.degree_one()
    if not deg1:
        return True, None
    return False, [L.to_dense({w[0]: c for w, c in g.terms.items() if w}) for g in deg1]


def kernel_degree_bound(L: AlgebraTable, gb: GroebnerBasis | None = None) -> dict:
    """Check that every element of the kernel of L -> U(L) lies in L^4."""
    gb = gb or enveloping_basis(L)
    ker = kernel_of_iota(L, gb)
    L4 = power(L, 4)
    return {
        "kernel_dim": ker.dim,
        "L4_dim": L4.dim,
        "kernel_in_L4": ker <= L4,
        "passed": ker <= L4,
    }
