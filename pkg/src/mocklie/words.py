"""Commutative nonassociative words.

A word is either a generator, stored as its integer index, or a product node,
stored as a pair ``(u, v)``.  Product nodes are canonical: the children are
ordered by :func:`word_key`, so each commutativity class has exactly one
representative and words can be used directly as dict keys.

Word order: total degree first, then recursively by the children (smaller
child first).  Generators compare by index.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence, Union

Word = Union[int, tuple]

__all__ = [
    "Word",
    "word_key",
    "degree",
    "multidegree",
    "product",
    "word_str",
    "parse_word",
    "variables",
    "substitute",
]


@lru_cache(maxsize=None)
def word_key(w: Word) -> tuple:
    if isinstance(w, int):
        return (1, w)
    u, v = w
    ku, kv = word_key(u), word_key(v)
    return (ku[0] + kv[0], ku, kv)


def degree(w: Word) -> int:
    return word_key(w)[0]


@lru_cache(maxsize=None)
def _multidegree(w: Word) -> dict:
    if isinstance(w, int):
        return {w: 1}
    out = dict(_multidegree(w[0]))
    for g, d in _multidegree(w[1]).items():
        out[g] = out.get(g, 0) + d
    return out


def multidegree(w: Word, ngens: int) -> tuple[int, ...]:
    md = _multidegree(w)
    return tuple(md.get(g, 0) for g in range(ngens))


def variables(w: Word) -> set[int]:
    return set(_multidegree(w))


def product(u: Word, v: Word) -> Word:
    """Canonical commutative product node."""
    return (u, v) if word_key(u) <= word_key(v) else (v, u)


def word_str(w: Word, names: Sequence[str]) -> str:
    if isinstance(w, int):
        return names[w]
    u, v = w
    su, sv = word_str(u, names), word_str(v, names)
    if not isinstance(u, int):
        su = f"({su})"
    if not isinstance(v, int):
        sv = f"({sv})"
    return f"{su}*{sv}"


def substitute(w: Word, mapping: dict[int, Word]) -> Word:
    """Replace generators by words, re-canonicalizing on the way up."""
    if isinstance(w, int):
        return mapping.get(w, w)
    return product(substitute(w[0], mapping), substitute(w[1], mapping))


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Inverse of :func:`word_str` for a single monomial such as ``((a*b)*c)*a``."""
    index = {n: i for i, n in enumerate(names)}
    pos = 0
    s = text.replace(" ", "")

    def atom() -> Word:
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            w = expr()
            if pos >= len(s) or s[pos] != ")":
                raise ValueError(f"expected ')' at position {pos} in {text!r}")
            pos += 1
            return w
        start = pos
        while pos < len(s) and (s[pos].isalnum() or s[pos] == "_"):
            pos += 1
        name = s[start:pos]
        if name not in index:
            raise ValueError(f"unknown generator {name!r} at position {start} in {text!r}")
        return index[name]

    def expr() -> Word:
        nonlocal pos
        w = atom()
        while pos < len(s) and s[pos] == "*":
            pos += 1
            w = product(w, atom())
        return w

    w = expr()
    if pos != len(s):
        raise ValueError(f"trailing input at position {pos} in {text!r}")
    return w
