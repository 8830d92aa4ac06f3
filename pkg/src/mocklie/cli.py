"""Command-line driver.

Every command prints one report (JSON by default, ``--format text`` for an
indented key/value listing).  Exit codes: 0 success, 1 a mathematical
negative (failed axiom check, or a violated ``--expect``), 2 usage errors,
3 Groebner budget exhausted.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .algebra import (
    AlgebraTable,
    center,
    format_vector,
    is_associative,
    is_commutative,
    is_mock_lie,
    jacobi_failures,
    lower_central_series,
    nil_index,
)
from .catalog import (
    AlgebraFileError,
    UnknownAlgebraError,
    dump_report,
    format_algebra,
    get_algebra,
)
from .enveloping import BudgetExhausted, enveloping_basis, kernel_degree_bound, normal_words
from .field import parse_field
from .free import build_free_quotient, structure_constant_profile
from .identities import (
    CharacteristicError,
    IdentityParseError,
    builtin_identity,
    eval_identity,
    holds_identically,
    load_identity,
)
from .representations import (
    InvalidModuleError,
    adjoint_module,
    antiderivations,
    cube_vanishes,
    make_module,
    regular_module,
    semidirect_extension,
    trivial_module,
    truncated_poly_algebra,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("mocklie")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _load_algebra(spec: str, field_text: str | None) -> AlgebraTable:
    """Catalog name, ``.alg`` path, or ``free:a,b,c:3,3,2``."""
    try:
        if spec.startswith("free:"):
            _, gens, caps = spec.split(":")
            A = build_free_quotient(gens.split(","), [int(c) for c in caps.split(",")]).algebra
        elif spec.startswith("trunc") and spec[5:].isdigit():
            A = truncated_poly_algebra(int(spec[5:]))
        else:
            A = get_algebra(spec)
    except (UnknownAlgebraError, AlgebraFileError, FileNotFoundError, ValueError) as e:
        raise UsageError(str(e)) from None
    field = _field(field_text)
    return A if field == A.field else A.change_field(field)


def _field(text):
    try:
        return parse_field(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _vec(A: AlgebraTable, v) -> str:
    return format_vector(A.to_sparse(v), A.labels, A.field)


def _map_lines(A: AlgebraTable, D, target_labels) -> list[str]:
    out = []
    for j in range(A.dim):
        col = {a: D.rows[a][j] for a in range(D.nrows) if D.rows[a][j]}
        if col:
            out.append(f"{A.labels[j]} -> {format_vector(col, target_labels, A.field)}")
    return out


def _inputs(args, A: AlgebraTable) -> dict:
    return {"algebra": args.algebra, "dim": A.dim, "field": str(A.field)}


def _check_expect(results: dict, expects: list[str]) -> list[str]:
    """``key=value`` pairs compared against the string form of results[key]."""
    failed = []
    for e in expects or []:
        if "=" not in e:
            raise UsageError(f"--expect needs key=value, got {e!r}")
        key, want = e.split("=", 1)
        if key not in results:
            raise UsageError(f"--expect: no result named {key!r}")
        got = results[key]
        if isinstance(got, bool):
            got_s = "true" if got else "false"
        else:
            got_s = "null" if got is None else str(got)
        if got_s != want:
            failed.append(f"{key}: expected {want}, got {got_s}")
    return failed


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra, args.field)
    comm = is_commutative(A)
    jac = jacobi_failures(A, limit=1) if comm else []
    mock = comm and not jac
    res: dict = {"commutative": comm, "jacobi": comm and not jac, "mock_lie": mock}
    if jac:
        i, j, k = jac[0]
        res["jacobi_failure"] = [A.labels[i], A.labels[j], A.labels[k]]
    if comm:
        for name in ("jordan", "nil3", "engel3"):
            try:
                res[name] = holds_identically(A, builtin_identity(name), jobs=args.jobs)
            except CharacteristicError as e:
                res[name] = f"undecided: {e}"
    res["associative"] = is_associative(A)
    Z = center(A)
    res["center_dim"] = Z.dim
    res["center_basis"] = [_vec(A, v) for v in Z.basis]
    ni = nil_index(A)
    res["nil_index"] = ni
    res["lower_central_series_dims"] = [S.dim for S in lower_central_series(A)]
    code = EXIT_OK if mock else EXIT_NEGATIVE
    return {"inputs": _inputs(args, A), "results": res}, code


def cmd_free(args) -> tuple[dict, int]:
    gens = [g for g in args.gens.split(",") if g]
    try:
        caps = [int(c) for c in args.caps.split(",")]
        r = build_free_quotient(gens, caps, _field(args.field), keep=args.keep)
    except ValueError as e:
        raise UsageError(str(e)) from None
    A = r.algebra
    if args.table:
        Path(args.table).write_text(format_algebra(A, f"free mock-Lie quotient {args.gens} caps {args.caps}"))
    res = {
        "dim": A.dim,
        "mock_lie": is_mock_lie(A),
        "nil_index": nil_index(A),
        "center_dim": center(A).dim,
        "structure_constants": sorted(
            (A.field.format(c) for c in structure_constant_profile(A)),
            key=lambda s: (s.startswith("-"), s),
        ),
        "basis": r.word_strings(),
    }
    inputs = {"generators": gens, "caps": caps, "field": str(A.field), "keep": args.keep}
    return {"inputs": inputs, "results": res}, EXIT_OK


def cmd_envelope(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra, args.field)
    if not is_mock_lie(A):
        log.warning("%s is not mock-Lie; computing U anyway", args.algebra)
    t0 = time.monotonic()
    code = EXIT_OK
    try:
        gb = enveloping_basis(A, args.maxdeg, grow=args.maxdeg is None, checkpoint=args.checkpoint)
    except BudgetExhausted as e:
        gb = e.partial
        code = EXIT_BUDGET
    res: dict = {"complete": gb.complete, "max_degree_reached": gb.max_degree_reached}
    res["gb_size"] = len(gb.generators)
    if gb.complete:
        res["dim_u"] = len(normal_words(gb))
        res["pbw_dim"] = 2 ** A.dim
    deg1 = gb.degree_one()
    res["special"] = not deg1 if gb.complete else None
    wit = [{w[0]: c for w, c in g.terms.items() if w} for g in deg1]
    res["witnesses"] = [format_vector(w, A.labels, A.field) for w in wit]
    Z = center(A)
    res["witnesses_central"] = all(Z.contains(A.to_dense(w)) for w in wit)
    if gb.complete:
        kb = kernel_degree_bound(A, gb)
        res["kernel_dim"] = kb["kernel_dim"]
        res["kernel_in_L4"] = kb["kernel_in_L4"]
    if args.gb:
        res["groebner_basis"] = gb.to_lines()
    if args.timing:
        res["seconds"] = round(time.monotonic() - t0, 3)
    opts = {"maxdeg": args.maxdeg, "checkpoint": args.checkpoint}
    return {"inputs": _inputs(args, A), "options": opts, "results": res}, code


def _identity(name: str):
    try:
        if os.path.exists(name) or name.endswith(".id"):
            return load_identity(name)
        return builtin_identity(name)
    except FileNotFoundError:
        raise UsageError(f"unknown identity {name!r}") from None
    except IdentityParseError as e:
        raise UsageError(f"identity parse error: {e}") from None


def cmd_identity(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra, args.field)
    p = _identity(args.id)
    res: dict = {"identity": p.name or args.id, "degree": p.degree, "variables": list(p.variables)}
    if args.at:
        if args.at == "generators":
            chosen = list(range(len(p.variables)))
            if len(chosen) > A.dim:
                raise UsageError("algebra has fewer basis vectors than the identity has variables")
        else:
            names = [s.strip() for s in args.at.split(",")]
            if len(names) != len(p.variables):
                raise UsageError(f"--at needs {len(p.variables)} elements, got {len(names)}")
            index = {lab: i for i, lab in enumerate(A.labels)}
            try:
                chosen = [index[n] for n in names]
            except KeyError as e:
                raise UsageError(f"unknown basis element {e.args[0]!r}") from None
        assignment = {v: A.basis_vector(i) for v, i in zip(p.variables, chosen)}
        val = eval_identity(A, p, assignment)
        res["at"] = {v: A.labels[i] for v, i in zip(p.variables, chosen)}
        res["value"] = _vec(A, val)
        res["zero"] = not any(val)
        Z = center(A)
        res["central"] = Z.contains(val)
        if any(val) and Z.dim == 1 and Z.contains(val):
            z = Z.sparse_basis()[0]
            k = next(iter(z))
            res["center_generator"] = format_vector(z, A.labels, A.field)
            res["center_coefficient"] = A.field.format(val[k] / z[k])
        res["holds"] = res["zero"]
    else:
        try:
            res["holds"] = holds_identically(A, p, jobs=args.jobs)
        except CharacteristicError as e:
            raise UsageError(str(e)) from None
    return {"inputs": _inputs(args, A), "results": res}, EXIT_OK


def _load_module(args, A: AlgebraTable):
    kind = args.module
    if kind == "adjoint":
        return adjoint_module(A), A.labels
    if kind == "regular":
        return regular_module(A), A.labels
    if kind == "trivial":
        V = trivial_module(A, args.vdim)
        return V, tuple(f"v{i + 1}" for i in range(args.vdim))
    # JSON module file: {"dim": m, "rho": [matrix per basis element]}
    import json

    try:
        data = json.loads(Path(kind).read_text())
        m = int(data["dim"])
        rho = [[[A.field.parse(str(x)) for x in row] for row in mat] for mat in data["rho"]]
        V = make_module(A, m, rho)
    except FileNotFoundError:
        raise UsageError(f"--module must be adjoint, regular, trivial or a file; {kind!r} not found") from None
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"bad module file {kind}: {e}") from None
    return V, tuple(data.get("labels") or [f"v{i + 1}" for i in range(m)])


def cmd_antider(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra, args.field)
    try:
        V, vlabels = _load_module(args, A)
    except InvalidModuleError as e:
        raise UsageError(str(e)) from None
    S = antiderivations(A, V)
    res: dict = {
        "module": args.module,
        "module_dim": V.dim,
        "dim": S.dim,
        "inner_dim": S.inner_dim,
        "outer_dim": S.outer_dim,
        "basis": [_map_lines(A, D, vlabels) for D in S.basis],
    }
    if args.module == "adjoint":
        # D^3 = 0 is forced only when L + KD is again mock-Lie
        res["cube_zero"] = [cube_vanishes(D) for D in S.basis]
        res["extension_mock_lie"] = [is_mock_lie(semidirect_extension(A, D)) for D in S.basis]
    return {"inputs": _inputs(args, A), "results": res}, EXIT_OK


def cmd_trunc_poly(args) -> tuple[str, int]:
    if args.n < 2:
        raise UsageError("trunc-poly needs n >= 2")
    text = format_algebra(truncated_poly_algebra(args.n), f"tK[t]/(t^{args.n})")
    return text, EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for identity checks")
    common.add_argument("--expect", action="append", metavar="KEY=VALUE",
                        help="exit 1 unless results[KEY] prints as VALUE (repeatable)")
    common.add_argument("--field", help="QQ (default) or a prime: p=251")
    common.add_argument("--timestamp", action="store_true", help="add a wall-clock timestamp")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="mocklie", description="Mock-Lie algebra computations")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    algebra_help = "catalog name (A12, A12+A01, M44, ...), .alg file, truncN or free:a,b:3,2"

    c = sub.add_parser("check", parents=[common], help="axioms and invariants")
    c.add_argument("algebra", help=algebra_help)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("free", parents=[common], help="degree-capped free mock-Lie quotient")
    c.add_argument("--gens", required=True, help="comma-separated generator names")
    c.add_argument("--caps", required=True, help="comma-separated degree caps")
    c.add_argument("--keep", choices=("large", "small"), default="large")
    c.add_argument("--table", help="also write the structure constants as an .alg file")
    c.set_defaults(func=cmd_free)

    c = sub.add_parser("envelope", parents=[common], help="Groebner basis of U(L)")
    c.add_argument("algebra", help=algebra_help)
    c.add_argument("--maxdeg", type=int, help="hard budget on overlap length (default: grow)")
    c.add_argument("--checkpoint", help="pickle file for resuming long completions")
    c.add_argument("--gb", action="store_true", help="include the reduced basis in the report")
    c.add_argument("--timing", action="store_true", help="include elapsed seconds")
    c.set_defaults(func=cmd_envelope)

    c = sub.add_parser("identity", parents=[common], help="evaluate or decide an identity")
    c.add_argument("algebra", help=algebra_help)
    c.add_argument("--id", required=True, help="built-in identity name or .id file")
    c.add_argument("--at", help="'generators' or comma-separated basis labels")
    c.set_defaults(func=cmd_identity)

    c = sub.add_parser("antider", parents=[common], help="antiderivations into a module")
    c.add_argument("algebra", help=algebra_help)
    c.add_argument("--module", default="adjoint",
                   help="adjoint, regular (no module check), trivial, or a JSON module file")
    c.add_argument("--vdim", type=int, default=1, help="dimension of the trivial module")
    c.set_defaults(func=cmd_antider)

    c = sub.add_parser("trunc-poly", parents=[common], help="emit tK[t]/(t^n) as an .alg table")
    c.add_argument("n", type=int)
    c.set_defaults(func=cmd_trunc_poly)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        report, code = args.func(args)
    except UsageError as e:
        print(f"mocklie: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(report, str):
        text = report
        if args.output:
            Path(args.output).write_text(text)
            text = args.output + "\n"
    else:
        results = report["results"]
        failed = []
        try:
            failed = _check_expect(results, args.expect)
        except UsageError as e:
            print(f"mocklie: error: {e}", file=sys.stderr)
            return EXIT_USAGE
        doc = {"command": args.command, "version": __version__}
        doc.update(report)
        if args.expect:
            doc["expectations"] = {"checked": list(args.expect), "failed": failed}
            if failed and code == EXIT_OK:
                code = EXIT_NEGATIVE
            elif not failed and code == EXIT_NEGATIVE:
                code = EXIT_OK
        doc["exit_code"] = code
        if args.timestamp:
            doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        text = dump_report(doc, args.format)
        if args.output:
            Path(args.output).write_text(text)
            text = ""
        for f in failed:
            print(f"mocklie: expectation failed: {f}", file=sys.stderr)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
