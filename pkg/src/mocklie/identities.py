"""Nonassociative polynomial identities: a small DSL, linearization, evaluation.

Identity files look like::

    # comment
    name: glennie8
    vars: x y z
    U(a,b) := 2*(a*b)*a - (a*a)*b
    H(x,y,z) := ...
    H(x,y,z) - H(y,x,z)

``*`` is the commutative nonassociative product (left associative when
chained), or scalar multiplication when one side is a number.  Coefficients
are integers or ``n/m``.  A name directly followed by ``(`` is a macro call.
Every non-header, non-macro line belongs to the identity body.
"""

from __future__ import annotations

import itertools
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .algebra import AlgebraTable
from .words import Word, multidegree, product, variables, word_key, word_str

__all__ = [
    "IdentityPoly",
    "IdentityParseError",
    "UnknownVariableError",
    "CharacteristicError",
    "parse_identity",
    "load_identity",
    "builtin_identity",
    "linearize",
    "homogeneous_components",
    "eval_identity",
    "evaluate_on_basis",
    "holds_identically",
    "identity_dir",
]


class IdentityParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.col = col


class UnknownVariableError(IdentityParseError):
    pass


class CharacteristicError(ValueError):
    pass


@dataclass(frozen=True)
class IdentityPoly:
    """Rational combination of commutative words in named variables."""

    variables: tuple[str, ...]
    terms: tuple[tuple[Fraction, Word], ...]
    name: str = ""

    @classmethod
    def from_dict(cls, variables: Sequence[str], terms: Mapping[Word, Fraction], name: str = ""):
        clean = [(Fraction(c), w) for w, c in terms.items() if c]
        clean.sort(key=lambda t: word_key(t[1]))
        for _, w in clean:
            for v in variables_of(w):
                if v >= len(variables):
                    raise UnknownVariableError(f"word uses undeclared variable index {v}")
        return cls(tuple(variables), tuple(clean), name)

    def as_dict(self) -> dict[Word, Fraction]:
        return {w: c for c, w in self.terms}

    def __len__(self):
        return len(self.terms)

    def multidegrees(self) -> set[tuple[int, ...]]:
        n = len(self.variables)
        return {multidegree(w, n) for _, w in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    @property
    def multidegree(self) -> tuple[int, ...] | None:
        mds = self.multidegrees()
        return next(iter(mds)) if len(mds) == 1 else None

    @property
    def degree(self) -> int:
        return max((sum(md) for md in self.multidegrees()), default=0)

    def is_multilinear(self) -> bool:
        return all(all(d <= 1 for d in md) for md in self.multidegrees())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for c, w in self.terms:
            s = word_str(w, self.variables)
            if c == 1:
                t = s
            elif c == -1:
                t = f"-{s}"
            else:
                t = f"{c}*({s})" if not isinstance(w, int) else f"{c}*{s}"
            out.append(t)
        text = out[0]
        for t in out[1:]:
            text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return text


def variables_of(w: Word) -> set[int]:
    return variables(w)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>:=|[-+*/(),]))"
)
_VAR = re.compile(r"[a-z][a-z0-9]*\Z")


def _tokenize(text: str, line: int, col0: int = 0):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise IdentityParseError(f"unexpected character {text[bad]!r}", line, col0 + bad + 1)
        kind = m.lastgroup
        val = m.group(kind)
        out.append((kind, val, line, col0 + m.start(kind) + 1))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent parser producing a small AST."""

    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg):
        t = self.peek()
        if t is None:
            last = self.toks[-1] if self.toks else (None, None, None, None)
            raise IdentityParseError(msg + " (at end of input)", last[2], last[3])
        raise IdentityParseError(msg, t[2], t[3])

    def take(self, kind=None, val=None):
        t = self.peek()
        if t is None or (kind and t[0] != kind) or (val and t[1] != val):
            self.error(f"expected {val or kind}")
        self.i += 1
        return t

    def at(self, val):
        t = self.peek()
        return t is not None and t[0] == "op" and t[1] == val

    def expr(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.term()
            node = ("add", node, rhs) if op == "+" else ("add", node, ("neg", rhs))
        return node

    def term(self):
        if self.at("-"):
            self.take()
            return ("neg", self.term())
        if self.at("+"):
            self.take()
            return self.term()
        node = self.factor()
        while self.at("*"):
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        t = self.peek()
        if t is None:
            self.error("expected an operand")
        kind, val, line, col = t
        if kind == "num":
            self.take()
            num = int(val)
            if self.at("/"):
                self.take()
                den = self.take("num")
                if int(den[1]) == 0:
                    raise IdentityParseError("zero denominator", den[2], den[3])
                return ("num", Fraction(num, int(den[1])))
            return ("num", Fraction(num))
        if kind == "name":
            self.take()
            if self.at("("):
                self.take()
                args = [self.expr()]
                while self.at(","):
                    self.take()
                    args.append(self.expr())
                self.take("op", ")")
                return ("call", val, args, line, col)
            return ("var", val, line, col)
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        self.error(f"unexpected {val!r}")


# polynomials during evaluation: dict word -> Fraction; the key None marks a scalar
_SCALAR = None


def _padd(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _pmul(a: dict, b: dict) -> dict:
    a_scalar = set(a) <= {_SCALAR}
    b_scalar = set(b) <= {_SCALAR}
    if a_scalar or b_scalar:
        s, p = (a, b) if a_scalar else (b, a)
        c = s.get(_SCALAR, Fraction(0))
        return {k: c * v for k, v in p.items() if c * v}
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            w = product(u, v)
            out[w] = out.get(w, 0) + x * y
    return {k: v for k, v in out.items() if v}


class _Evaluator:
    def __init__(self, macros, var_index, declared: bool):
        self.macros = macros
        self.var_index = var_index
        self.declared = declared

    def run(self, node, env, depth=0):
        if depth > 200:
            raise IdentityParseError("macro recursion too deep")
        kind = node[0]
        if kind == "num":
            return {_SCALAR: node[1]} if node[1] else {}
        if kind == "var":
            _, name, line, col = node
            if name in env:
                return env[name]
            if name not in self.var_index:
                if self.declared or not _VAR.match(name):
                    raise UnknownVariableError(f"unknown variable {name!r}", line, col)
                self.var_index[name] = len(self.var_index)
            return {self.var_index[name]: Fraction(1)}
        if kind == "neg":
            return {k: -v for k, v in self.run(node[1], env, depth).items()}
        if kind == "add":
            a, b = self.run(node[1], env, depth), self.run(node[2], env, depth)
            if (_SCALAR in a and len(b) and _SCALAR not in b) or (
                _SCALAR in b and len(a) and _SCALAR not in a
            ):
                raise IdentityParseError("cannot add a scalar to a polynomial")
            return _padd(a, b)
        if kind == "mul":
            return _pmul(self.run(node[1], env, depth), self.run(node[2], env, depth))
        if kind == "call":
            _, name, args, line, col = node
            if name not in self.macros:
                raise IdentityParseError(f"unknown macro {name!r}", line, col)
            params, body = self.macros[name]
            if len(params) != len(args):
                raise IdentityParseError(
                    f"macro {name!r} takes {len(params)} arguments, got {len(args)}", line, col
                )
            vals = [self.run(a, env, depth) for a in args]
            return self.run(body, dict(zip(params, vals)), depth + 1)
        raise AssertionError(kind)


_MACRO = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(([^)]*)\)\s*:=(.*)\Z")
_HEADER = re.compile(r"\s*(name|vars)\s*:(?!=)(.*)\Z")


def parse_identity(text: str, name: str | None = None) -> IdentityPoly:
    """Parse DSL text (a whole file or a single expression) into an IdentityPoly."""
    macros: dict[str, tuple[list[str], tuple]] = {}
    declared: list[str] | None = None
    body_tokens = []
    label = name or ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _HEADER.match(line)
        if m:
            key, val = m.group(1), m.group(2).strip()
            if key == "name":
                label = name or val
            else:
                declared = val.replace(",", " ").split()
                for v in declared:
                    if not _VAR.match(v):
                        raise IdentityParseError(f"invalid variable name {v!r}", lineno)
            continue
        m = _MACRO.match(line)
        if m:
            mname = m.group(1)
            params = [p.strip() for p in m.group(2).split(",") if p.strip()]
            col0 = line.index(":=") + 2
            toks = _tokenize(m.group(3), lineno, col0)
            p = _Parser(toks)
            body = p.expr()
            if p.peek() is not None:
                p.error("trailing input in macro body")
            macros[mname] = (params, body)
            continue
        body_tokens.extend(_tokenize(line, lineno))
    if not body_tokens:
        raise IdentityParseError("no identity body found")
    p = _Parser(body_tokens)
    ast = p.expr()
    if p.peek() is not None:
        p.error("trailing input")
    var_index = {v: i for i, v in enumerate(declared or [])}
    ev = _Evaluator(macros, var_index, declared is not None)
    poly = ev.run(ast, {})
    if _SCALAR in poly:
        raise IdentityParseError("identity has a constant term")
    names = sorted(var_index, key=var_index.get)
    return IdentityPoly.from_dict(names, poly, label)


def identity_dir() -> Path:
    env = os.environ.get("MOCKLIE_DATA")
    if env and (Path(env) / "identities").is_dir():
        return Path(env) / "identities"
    return Path(str(resources.files("mocklie") / "identities"))


def load_identity(path: str | os.PathLike) -> IdentityPoly:
    path = Path(path)
    poly = parse_identity(path.read_text())
    if not poly.name:
        poly = IdentityPoly(poly.variables, poly.terms, path.stem)
    return poly


def builtin_identity(name: str) -> IdentityPoly:
    path = identity_dir() / f"{name}.id"
    if not path.exists():
        raise FileNotFoundError(f"no identity file {path}")
    poly = parse_identity(path.read_text())
    if not poly.name:
        poly = IdentityPoly(poly.variables, poly.terms, name)
    return poly


# ---------------------------------------------------------------------------
# linearization


def homogeneous_components(p: IdentityPoly) -> list[IdentityPoly]:
    n = len(p.variables)
    groups: dict[tuple, dict] = {}
    for c, w in p.terms:
        groups.setdefault(multidegree(w, n), {})[w] = c
    return [IdentityPoly.from_dict(p.variables, groups[md], p.name) for md in sorted(groups)]


def _fresh_names(p: IdentityPoly, degs: Sequence[int]) -> list[list[str]]:
    taken = set(p.variables)
    out = []
    for v, d in zip(p.variables, degs):
        if d <= 1:
            out.append([v])
            continue
        copies = []
        for i in range(1, d + 1):
            cand = f"{v}{i}"
            while cand in taken:
                cand += "x"
            taken.add(cand)
            copies.append(cand)
        out.append(copies)
    return out


def _placements(w: Word, slots: dict[int, list[int]]):
    """All ways to give each occurrence of a variable a distinct copy."""
    occ = []

    def walk(x):
        if isinstance(x, int):
            occ.append(x)
        else:
            walk(x[0])
            walk(x[1])

    walk(w)
    per_var: dict[int, list[int]] = {}
    for pos, v in enumerate(occ):
        per_var.setdefault(v, []).append(pos)
    choices = []
    for v, positions in per_var.items():
        choices.append([(positions, perm) for perm in itertools.permutations(slots[v], len(positions))])
    for combo in itertools.product(*choices):
        assign = [0] * len(occ)
        for positions, perm in combo:
            for pos, new in zip(positions, perm):
                assign[pos] = new
        it = iter(assign)

        def rebuild(x):
            if isinstance(x, int):
                return next(it)
            left = rebuild(x[0])
            right = rebuild(x[1])
            return product(left, right)

        yield rebuild(w)


def linearize(p: IdentityPoly) -> IdentityPoly:
    """Full multilinearization of a multihomogeneous identity.

    A variable of degree d is replaced by d fresh variables, summing over all
    d! ways of placing them.  Multilinear input is returned unchanged.
    """
    if p.is_multilinear():
        return p
    mds = p.multidegrees()
    if len(mds) != 1:
        raise ValueError("linearize needs a multihomogeneous identity; split it first")
    degs = next(iter(mds))
    names = _fresh_names(p, degs)
    flat: list[str] = []
    slots: dict[int, list[int]] = {}
    for v, copies in enumerate(names):
        slots[v] = list(range(len(flat), len(flat) + len(copies)))
        flat.extend(copies)
    out: dict[Word, Fraction] = {}
    for c, w in p.terms:
        for nw in _placements(w, slots):
            out[nw] = out.get(nw, 0) + c
    name = f"lin({p.name})" if p.name else ""
    return IdentityPoly.from_dict(flat, out, name)


# ---------------------------------------------------------------------------
# evaluation


def _coeff(A: AlgebraTable, c: Fraction):
    return A.field(c)


def eval_identity(A: AlgebraTable, p: IdentityPoly, assignment: Mapping[str, Sequence]) -> tuple:
    """Value of ``p`` with each variable replaced by the given element of ``A``."""
    missing = [v for v in p.variables if v not in assignment]
    if missing:
        raise ValueError(f"no value for variables {missing}")
    vals = {i: A.to_sparse(assignment[v]) for i, v in enumerate(p.variables)}
    memo: dict = {}

    def ev(w):
        if isinstance(w, int):
            return vals[w]
        got = memo.get(w)
        if got is None:
            got = A.mul_sparse(ev(w[0]), ev(w[1]))
            memo[w] = got
        return got

    total: dict = {}
    for c, w in p.terms:
        cc = _coeff(A, c)
        for k, x in ev(w).items():
            total[k] = total.get(k, A.field.zero) + cc * x
    return A.to_dense({k: v for k, v in total.items() if v})


def _tensor_terms(A: AlgebraTable, p: IdentityPoly, restrict: dict[int, Sequence[int]] | None):
    """Sparse tensor of a multilinear identity over basis assignments.

    Returns ``{index tuple: sparse value}`` keyed by one basis index per
    variable (in ``p.variables`` order), nonzero entries only.
    """
    one = A.field.one
    nvars = len(p.variables)
    memo: dict = {}

    def tensor(w):
        got = memo.get(w)
        if got is not None:
            return got
        if isinstance(w, int):
            idx = restrict.get(w, range(A.dim)) if restrict else range(A.dim)
            res = (((w,), {(i,): {i: one} for i in idx}))
        else:
            lv, lt = tensor(w[0])
            rv, rt = tensor(w[1])
            vs = tuple(sorted(lv + rv))
            # positions of each side's variables in the merged tuple
            lpos = [vs.index(v) for v in lv]
            rpos = [vs.index(v) for v in rv]
            out = {}
            for lk, lval in lt.items():
                for rk, rval in rt.items():
                    val = A.mul_sparse(lval, rval)
                    if val:
                        key = [0] * len(vs)
                        for pos, x in zip(lpos, lk):
                            key[pos] = x
                        for pos, x in zip(rpos, rk):
                            key[pos] = x
                        out[tuple(key)] = val
            res = (vs, out)
        memo[w] = res
        return res

    total: dict = {}
    for c, w in p.terms:
        vs, t = tensor(w)
        if len(vs) != nvars:
            raise ValueError("tensor evaluation needs every variable in every term")
        cc = _coeff(A, c)
        for key, val in t.items():
            acc = total.setdefault(key, {})
            for k, x in val.items():
                nv = acc.get(k, A.field.zero) + cc * x
                if nv:
                    acc[k] = nv
                else:
                    acc.pop(k, None)
    return {k: v for k, v in total.items() if v}


def _nonzero_chunk(args):
    A, p, var, chunk = args
    res = _tensor_terms(A, p, {var: chunk})
    return sorted(res.items(), key=lambda kv: kv[0])[:1]


def evaluate_on_basis(A: AlgebraTable, p: IdentityPoly, jobs: int = 1) -> dict:
    """All nonzero values of a multilinear identity on basis tuples.

    With ``jobs > 1`` only a witness (the smallest nonzero tuple per worker
    chunk) is collected, which is enough to decide vanishing.
    """
    if not p.is_multilinear():
        raise ValueError("evaluate_on_basis needs a multilinear identity")
    if jobs <= 1 or A.dim < 2 or not p.variables:
        return _tensor_terms(A, p, None)
    chunks = [list(range(A.dim))[i::jobs] for i in range(jobs)]
    out = {}
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for res in ex.map(_nonzero_chunk, [(A, p, 0, ch) for ch in chunks if ch]):
            out.update(dict(res))
    return out


def holds_identically(A: AlgebraTable, p: IdentityPoly, jobs: int = 1) -> bool:
    """Whether ``p`` vanishes for all elements of ``A``.

    Each multihomogeneous component is linearized and evaluated on every
    tuple of basis vectors.  Restitution from the linearization needs the
    characteristic to exceed the degree, so small primes are refused.
    """
    char = A.field.characteristic
    if char and char <= p.degree:
        raise CharacteristicError(
            f"characteristic {char} does not exceed the identity degree {p.degree}"
        )
    for comp in homogeneous_components(p):
        if evaluate_on_basis(A, linearize(comp), jobs=jobs):
            return False
    return True
