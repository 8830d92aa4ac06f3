"""Acceptance criteria, one test per criterion; all checks are exact."""

import random


from mocklie.algebra import (
    abelian,
    center,
    ideal_generated_by,
    is_mock_lie,
    nil_index,
    power,
    quotient,
    restrict,
    subspace_product,
)
from mocklie.catalog import builtin_catalog, format_algebra, get_algebra, parse_algebra
from mocklie.enveloping import (
    complete,
    dim_u,
    enveloping_relations,
    is_special,
    kernel_of_iota,
    normal_words,
)
from mocklie.field import GF
from mocklie.free import build_free_quotient
from mocklie.identities import builtin_identity, eval_identity, evaluate_on_basis, holds_identically, linearize
from mocklie.representations import antiderivations, truncated_poly_algebra
from mocklie.linalg import Matrix

TABLE = {
    "A12": 3,
    "A12+A01": 5,
    "A13": 5,
    "A12+A12": 6,
    "A12+A01+A01": 9,
    "A13+A01": 9,
    "A12+A12+A01": 10,
    "A12+A13": 10,
    "A12+A01+A01+A01": 17,
    "A13+A01+A01": 17,
}


def _run_set():
    """Nonabelian mock-Lie algebras of the run set (everything but M44)."""
    out = {}
    for e in builtin_catalog():
        if e.name != "M44":
            A = e.table
            if not A.is_abelian():
                out[e.name] = A
    for caps in [(1, 1), (2, 1), (1, 1, 1), (3,)]:
        r = build_free_quotient("abc"[: len(caps)], caps)
        if not r.algebra.is_abelian():
            out[f"free{caps}"] = r.algebra
    return out


def test_criterion_01_dim_u_table(criterion):
    got = {name: dim_u(get_algebra(name)) for name in TABLE}
    bad = {k: v for k, v in got.items() if v != TABLE[k]}
    criterion(1, not bad, f"{len(TABLE) - len(bad)}/{len(TABLE)} rows exact" + (f"; wrong: {bad}" if bad else ""))


def test_criterion_02_abelian_pbw(criterion):
    dims = [dim_u(abelian(n)) for n in range(1, 7)]
    criterion(2, dims == [2 ** n for n in range(1, 7)], f"dim U(abelian n), n=1..6: {dims}")


def test_criterion_03_pbw_failure_bound(criterion, m44, m44_gb):
    algs = _run_set()
    rows = [(name, A.dim, dim_u(A)) for name, A in algs.items()]
    rows.append(("M44", 44, len(normal_words(m44_gb))))
    bad = [r for r in rows if not r[2] <= 3 * 2 ** (r[1] - 2) < 2 ** r[1]]
    criterion(3, not bad, f"{len(rows)} nonabelian algebras satisfy dim U <= 3*2^(n-2) < 2^n")


def test_criterion_04_free_quotient(criterion, m44):
    A = m44.algebra
    vals = (A.dim, nil_index(A), center(A).dim, is_mock_lie(A))
    criterion(4, vals == (44, 9, 1, True), f"dim, nilIndex, center dim, mock-Lie = {vals}")


def test_criterion_05_glennie(criterion, m44):
    details = []
    ok = True
    for field_name, A in [("QQ", m44.algebra)] + [
        (f"GF({p})", build_free_quotient("abc", (3, 3, 2), field=GF(p)).algebra) for p in (5, 7, 251)
    ]:
        g = builtin_identity("glennie8")
        val = eval_identity(A, g, {"x": A.basis_vector(0), "y": A.basis_vector(1), "z": A.basis_vector(2)})
        Z = center(A)
        good = any(val) and Z.contains(val) and Z.dim == 1
        ok &= good
        details.append(f"{field_name}: {A.field.format(val[43])}*e44")
    criterion(5, ok, "G8(a,b,c) central and nonzero; " + ", ".join(details))


def test_criterion_06_speciality(criterion, m44, m44_gb):
    small = {n: A for n, A in _run_set().items() if A.dim <= 6}
    small.update({f"abelian{n}": abelian(n) for n in range(1, 7)})
    not_special = [n for n, A in small.items() if not is_special(A)[0]]
    A = m44.algebra
    ok_m, wit = is_special(A, m44_gb)
    witness_spans_center = kernel_of_iota(A, m44_gb) == center(A)
    ok = not not_special and not ok_m and witness_spans_center
    criterion(6, ok, f"{len(small)} algebras of dim <= 6 special; M44 special={ok_m}, "
                     f"degree-1 witness spans centre={witness_spans_center}")


def test_criterion_07_dim_u_m44(criterion, m44_gb):
    d = len(normal_words(m44_gb))
    criterion(7, d == 157 and m44_gb.complete, f"dim U(M44) = {d} (reduced basis of {len(m44_gb.generators)} elements)")


def test_criterion_08_kernel_in_l4(criterion, m44, m44_gb):
    injective = []
    for name, A in _run_set().items():
        if power(A, 4).is_zero():
            injective.append(kernel_of_iota(A).is_zero())
    A = m44.algebra
    m_ok = kernel_of_iota(A, m44_gb) <= power(A, 4)
    criterion(8, all(injective) and m_ok,
              f"{len(injective)} algebras with L^4 = 0 have injective iota; M44 kernel in L^4 = {m_ok}")


def test_criterion_09_antiderivations(criterion):
    dims = [antiderivations(truncated_poly_algebra(n)).dim for n in range(2, 9)]
    forms_ok = True
    for n in range(2, 9):
        T = truncated_poly_algebra(n)
        d = n - 1
        reps = []

        def m(entries):
            rows = [[0] * d for _ in range(d)]
            for src, dst, c in entries:
                rows[dst - 1][src - 1] = c
            return [x for r in rows for x in r]

        reps.append(m([(1, n - 1, 1)]))
        if n >= 3:
            reps.append(m([(1, n - 2, T.field.parse("-1/2")), (2, n - 1, 1)]))
        if n >= 4:
            reps.append(m([(1, n - 3, 1), (2, n - 2, -2), (3, n - 1, 1)]))
        basis = [[x for r in D.rows for x in r] for D in antiderivations(T).basis]
        forms_ok &= Matrix(basis).rank() == Matrix(reps).rank() == Matrix(basis + reps).rank()
    ok = dims == [1, 2, 3, 3, 3, 3, 3] and forms_ok
    criterion(9, ok, f"dims n=2..8: {dims}; span equals representative forms: {forms_ok}")


def test_criterion_10_identities(criterion, m44):
    algs = {e.name: e.table for e in builtin_catalog() if e.name != "M44"}
    algs["M44"] = m44.algebra
    names = ("jacobi", "nil3", "jordan", "engel3")
    failures = [(a, i) for a, A in algs.items() for i in names if not holds_identically(A, builtin_identity(i))]
    A = m44.algebra
    L2 = power(A, 2)
    t = subspace_product(A, subspace_product(A, subspace_product(A, L2, L2), L2), L2)
    tower = subspace_product(A, t, A.whole()).is_zero()
    criterion(10, not failures and tower,
              f"4 identities on {len(algs)} algebras, failures={failures}; (((L2L2)L2)L2)L = 0 on M44: {tower}")


def test_criterion_11_property_suites(criterion):
    rng = random.Random(2024)
    notes = []
    # (a) dim U(L) <= dim U(L/I) dim U(I)
    pairs = 0
    ok_ul = True
    for name in ["A12+A01", "A13", "A12+A12", "A13+A01", "A12+A13", "A12+A12+A01", "A13+A01+A01", "C3"]:
        L = get_algebra(name)
        ideals = [center(L), power(L, 2)] + [ideal_generated_by(L, [L.basis_vector(i)]) for i in range(L.dim)]
        for I in ideals:
            if 0 < I.dim < L.dim:
                pairs += 1
                ok_ul &= dim_u(L) <= dim_u(quotient(L, I)) * dim_u(restrict(L, I))
    notes.append(f"ideal bound on {pairs} pairs")
    ok_ul &= pairs >= 20
    # (b) reduced basis independent of relation order
    ok_gb = True
    for name in ["A12+A13", "A13+A01+A01", "C3"]:
        L = get_algebra(name)
        rels = enveloping_relations(L)
        ref = complete(rels, 12, L.dim).to_lines()
        for _ in range(5):
            rng.shuffle(rels)
            ok_gb &= complete(rels, 12, L.dim).to_lines() == ref
    notes.append("GB order-independent")
    # (c) linearization vs 20 random substitutions
    ok_lin = True
    lin = linearize(builtin_identity("jordan"))
    A = get_algebra("A12+A13")
    tensor = evaluate_on_basis(A, lin)
    for _ in range(20):
        vals = [[rng.randint(-3, 3) for _ in range(A.dim)] for _ in lin.variables]
        direct = eval_identity(A, lin, dict(zip(lin.variables, vals)))
        expect = [A.field.zero] * A.dim
        for key, vec in tensor.items():
            coeff = 1
            for pos, i in enumerate(key):
                coeff *= vals[pos][i]
            for k, c in vec.items():
                expect[k] += coeff * c
        ok_lin &= list(direct) == expect
    notes.append("linearization agrees on 20 substitutions")
    # (d) file round trip
    ok_io = all(parse_algebra(format_algebra(e.table)) == e.table for e in builtin_catalog())
    notes.append("file round trip")
    criterion(11, ok_ul and ok_gb and ok_lin and ok_io, "; ".join(notes))
