"""Named small algebras, the ``.alg`` table format and report serialization.

``.alg`` files::

    # comment
    dim 3
    labels a b c
    1 2 3 1        # e1*e2 has coefficient 1 on e3

Indices are 1-based, only ``i <= j`` is stored, coefficients are integers or
``p/q``.  Products not listed are zero.

Names accepted by :func:`get_algebra`: the built-in entries, ``.alg`` stems
found in the catalog directories, ``abelianN``, and ``+``-joined direct sums
such as ``A12+A01+A01``.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable

from .algebra import AlgebraTable, abelian, direct_sum, is_commutative, is_mock_lie
from .field import QQ, Field

log = logging.getLogger(__name__)

__all__ = [
    "CatalogEntry",
    "AlgebraFileError",
    "UnknownAlgebraError",
    "builtin_catalog",
    "catalog",
    "get_algebra",
    "catalog_dirs",
    "read_algebra_file",
    "write_algebra_file",
    "parse_algebra",
    "format_algebra",
    "axiom_warnings",
    "dump_report",
]

DATA_ENV = "MOCKLIE_DATA"


class AlgebraFileError(ValueError):
    def __init__(self, msg: str, line: int | None = None, path: str | None = None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {msg}" if where else msg)
        self.line = line
        self.path = path


class UnknownAlgebraError(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown algebra"


@dataclass
class CatalogEntry:
    name: str
    source: str  # "builtin" | "file"
    note: str
    factory: Callable[[], AlgebraTable]

    @property
    def table(self) -> AlgebraTable:
        return self.factory()


# ---------------------------------------------------------------------------
# file format


def parse_algebra(text: str, field: Field = QQ, path: str | None = None) -> AlgebraTable:
    dim = None
    labels = None
    products: dict[tuple[int, int], dict[int, object]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0].lower()
        if head == "dim":
            if dim is not None:
                raise AlgebraFileError("duplicate dim line", lineno, path)
            if len(parts) != 2 or not parts[1].isdigit():
                raise AlgebraFileError("expected 'dim N'", lineno, path)
            dim = int(parts[1])
            continue
        if dim is None:
            raise AlgebraFileError("'dim N' must come first", lineno, path)
        if head == "labels":
            if labels is not None:
                raise AlgebraFileError("duplicate labels line", lineno, path)
            labels = parts[1:]
            if len(labels) != dim:
                raise AlgebraFileError(f"{len(labels)} labels for dim {dim}", lineno, path)
            if len(set(labels)) != dim:
                raise AlgebraFileError("labels must be distinct", lineno, path)
            continue
        if len(parts) != 4:
            raise AlgebraFileError("expected 'i j k q'", lineno, path)
        try:
            i, j, k = (int(p) for p in parts[:3])
        except ValueError:
            raise AlgebraFileError(f"malformed index in {line!r}", lineno, path) from None
        for idx in (i, j, k):
            if not 1 <= idx <= dim:
                raise AlgebraFileError(f"index {idx} out of range 1..{dim}", lineno, path)
        if i > j:
            raise AlgebraFileError(f"need i <= j, got {i} > {j}", lineno, path)
        try:
            q = field.parse(parts[3])
        except (ValueError, ZeroDivisionError):
            raise AlgebraFileError(f"bad coefficient {parts[3]!r}", lineno, path) from None
        vec = products.setdefault((i - 1, j - 1), {})
        vec[k - 1] = vec.get(k - 1, field.zero) + q
    if dim is None:
        raise AlgebraFileError("missing 'dim N' line", None, path)
    return AlgebraTable(dim, products, labels, field)


def format_algebra(A: AlgebraTable, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" if c else "#" for c in comment.splitlines()]
    lines.append(f"dim {A.dim}")
    default = tuple(f"e{i + 1}" for i in range(A.dim))
    if A.labels != default and A.dim:
        lines.append("labels " + " ".join(A.labels))
    for i, j, v in A.nonzero_products():
        if i > j:
            continue
        for k in sorted(v):
            lines.append(f"{i + 1} {j + 1} {k + 1} {A.field.format(v[k])}")
    return "\n".join(lines) + "\n"


def read_algebra_file(path, field: Field = QQ) -> AlgebraTable:
    p = Path(path)
    A = parse_algebra(p.read_text(), field, str(p))
    for w in axiom_warnings(A):
        log.warning("%s: %s", p, w)
    return A


def write_algebra_file(A: AlgebraTable, path, comment: str | None = None) -> None:
    Path(path).write_text(format_algebra(A, comment))


def axiom_warnings(A: AlgebraTable) -> list[str]:
    out = []
    if not is_commutative(A):
        out.append("table is not commutative")
    elif not is_mock_lie(A):
        out.append("table is not mock-Lie (Jacobi fails)")
    return out


# ---------------------------------------------------------------------------
# catalog


def _a12():
    return AlgebraTable(2, {(0, 0): {1: 1}}, ["a", "b"])


def _a13():
    return AlgebraTable(3, {(0, 1): {2: 1}}, ["a", "b", "c"])


def _c3():
    return AlgebraTable(3, {(0, 0): {2: 1}, (0, 1): {2: 1}}, ["a", "b", "c"])


@lru_cache(maxsize=None)
def _m44_cached():
    from .free import build_free_quotient

    return build_free_quotient(("a", "b", "c"), (3, 3, 2)).algebra


def _m44():
    return _m44_cached()


_BUILTIN = [
    ("A01", "one-dimensional abelian", lambda: abelian(1, labels=["a"])),
    ("A12", "a*a = b", _a12),
    ("A13", "a*b = c", _a13),
    ("C3", "a*a = c, a*b = c; isomorphic to A12+A01", _c3),
    ("M44", "free mock-Lie on a, b, c capped at degrees (3, 3, 2); built on demand", _m44),
]

# direct sums of the entries above with small enveloping algebras
SUM_NAMES = [
    "A12+A01",
    "A12+A12",
    "A12+A01+A01",
    "A13+A01",
    "A12+A12+A01",
    "A12+A13",
    "A12+A01+A01+A01",
    "A13+A01+A01",
]


def catalog_dirs() -> list[Path]:
    """Directories searched for ``.alg`` files: $MOCKLIE_DATA/catalog, then the packaged data."""
    dirs = []
    env = os.environ.get(DATA_ENV)
    if env:
        dirs.append(Path(env) / "catalog")
    dirs.append(Path(__file__).parent / "data" / "catalog")
    return [d for d in dirs if d.is_dir()]


def _file_entries() -> list[CatalogEntry]:
    seen = set()
    out = []
    for d in catalog_dirs():
        for f in sorted(d.glob("*.alg")):
            if f.stem in seen:
                continue
            seen.add(f.stem)
            note = ""
            for line in f.read_text().splitlines():
                if line.startswith("#"):
                    note = line.lstrip("# ").strip()
                    break
            out.append(CatalogEntry(f.stem, "file", note, lambda f=f: read_algebra_file(f)))
    return out


def builtin_catalog() -> list[CatalogEntry]:
    entries = [CatalogEntry(n, "builtin", note, fac) for n, note, fac in _BUILTIN]
    for name in SUM_NAMES:
        entries.append(
            CatalogEntry(name, "builtin", "direct sum", lambda name=name: get_algebra(name))
        )
    return entries


def catalog() -> list[CatalogEntry]:
    """Built-in entries followed by ``.alg`` files (files never shadow built-ins)."""
    entries = builtin_catalog()
    names = {e.name for e in entries}
    entries += [e for e in _file_entries() if e.name not in names]
    return entries


def _single(name: str) -> AlgebraTable:
    for n, _, fac in _BUILTIN:
        if n == name:
            return fac()
    if name.startswith("abelian") and name[7:].isdigit():
        return abelian(int(name[7:]))
    for e in _file_entries():
        if e.name == name:
            return e.table
    raise UnknownAlgebraError(f"unknown algebra {name!r}")


def get_algebra(name: str) -> AlgebraTable:
    """Look up a catalog name, a direct sum ``X+Y+...`` or a path to an ``.alg`` file."""
    name = name.strip()
    if name.endswith(".alg") or os.sep in name:
        return read_algebra_file(name)
    parts = [p.strip() for p in name.split("+")]
    if len(parts) == 1:
        return _single(parts[0])
    return direct_sum(*(_single(p) for p in parts))


# ---------------------------------------------------------------------------
# reports


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def _text_lines(x, indent: int = 0) -> Iterable[str]:
    pad = "  " * indent
    if isinstance(x, dict):
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_scalar(v)}"
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {_scalar(v)}"
    else:
        yield f"{pad}{_scalar(x)}"


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def dump_report(report: dict, fmt: str = "json") -> str:
    """Serialize a report; key order is preserved so output is reproducible."""
    data = _jsonable(report)
    if fmt == "json":
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if fmt == "text":
        return "\n".join(_text_lines(data)) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")
