"""Command-line front end.

Every subcommand prints JSON on stdout (``--human`` renders a table instead).
Exit codes: 0 success, 1 verification failure, 2 usage error, 3 input-file error.

    supalg check --algebra catalog:der_hs3
    supalg biderivations --algebra catalog:der_hs3 --degree 0 --definition new
    supalg deform --algebra catalog:der_hs3 --bider bracket --lambda 1/2 --lambda -1
    supalg verify-paper --json
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .biderivations import (
    BiderDefinition,
    bilinear_from_json,
    extract_phi_psi,
    is_supercommuting_fan_dai,
    is_supercommuting_new,
    solve_biderivations,
    solve_supercommuting_new,
)
from .deformation import deform
from .graded import SuperAlgebra, bracket_tensor, check_grading, check_jacobi, check_super_skew
from .linalg import RatMatrix, ScalarFormatError, parse_scalar
from .operators import (
    AxiomError,
    InconsistencyError,
    MembershipError,
    center,
    is_complete,
    solve_type1,
    solve_type2,
    type2_inner_decomposition,
)
from .verify import run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FILE = 0, 1, 2, 3

SCHEMA_PATH = Path(__file__).parent / "schemas" / "verification_report.schema.json"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- inputs ------------------------------------------------------------------


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_FILE) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                       EXIT_FILE) from None


def load_algebra(ref: str) -> SuperAlgebra:
    """``catalog:<id>`` or a path to an algebra JSON file."""
    if ref.startswith("catalog:"):
        try:
            return catalog.from_id(ref[len("catalog:"):])
        except (KeyError, ValueError) as exc:
            raise CliError(str(exc.args[0]), EXIT_USAGE) from None
    try:
        return catalog.from_json(_read_json(ref))
    except catalog.AlgebraFileError as exc:
        raise CliError(f"{ref}: {exc}", EXIT_FILE) from None


def load_bilinear(alg: SuperAlgebra, ref: str):
    if ref == "bracket":
        return bracket_tensor(alg)
    try:
        return bilinear_from_json(alg.space, _read_json(ref))
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"{ref}: not a bilinear map file: {exc}", EXIT_FILE) from None


def load_matrix(alg: SuperAlgebra, ref: str) -> RatMatrix:
    n = alg.dim
    if ref == "identity":
        return RatMatrix.identity(n)
    if ref == "zero":
        return RatMatrix.zeros(n, n)
    data = _read_json(ref)
    if not (isinstance(data, list) and len(data) == n and all(isinstance(r, list) and len(r) == n for r in data)):
        raise CliError(f"{ref}: expected a {n}x{n} array of \"p/q\" strings", EXIT_FILE)
    try:
        return RatMatrix.from_rows([[parse_scalar(v) for v in row] for row in data])
    except ScalarFormatError as exc:
        raise CliError(f"{ref}: {exc}", EXIT_FILE) from None


def _lambda(text: str):
    try:
        return parse_scalar(text)
    except ScalarFormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- subcommands -------------------------------------------------------------
# Each returns (payload, exit_code).


def cmd_check(args):
    alg = load_algebra(args.algebra)
    grading = check_grading(alg.space, alg.sc)
    skew, jac = check_super_skew(alg), check_jacobi(alg)
    ok = grading.ok and skew.ok and jac.ok
    out = {
        "algebra": alg.name,
        "dim_even": alg.space.dim_even,
        "dim_odd": alg.space.dim_odd,
        "grading": grading.to_json(),
        "super_skew": skew.to_json(),
        "jacobi": jac.to_json(),
        "lie_superalgebra": ok,
    }
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_center(args):
    return center(load_algebra(args.algebra)).to_json(), EXIT_OK


def _with_counts(space) -> dict:
    out = space.to_json()
    out["unknowns"] = space.unknowns
    out["rank"] = space.rank
    return out


def cmd_derivations(args):
    return _with_counts(solve_type1(load_algebra(args.algebra), args.degree)), EXIT_OK


def cmd_type2(args):
    alg = load_algebra(args.algebra)
    out = _with_counts(solve_type2(alg, args.degree))
    out["inner_decomposition"] = type2_inner_decomposition(alg, args.degree).to_json()
    return out, EXIT_OK


def cmd_complete(args):
    alg = load_algebra(args.algebra)
    return {"algebra": alg.name, **is_complete(alg).to_json()}, EXIT_OK


def cmd_biderivations(args):
    alg = load_algebra(args.algebra)
    return _with_counts(solve_biderivations(alg, args.degree, BiderDefinition(args.definition))), EXIT_OK


def cmd_supercommuting(args):
    alg = load_algebra(args.algebra)
    if args.definition == "new" and args.map is None:
        return _with_counts(solve_supercommuting_new(alg)), EXIT_OK
    m = load_matrix(alg, args.map or "identity")
    if args.definition == "new":
        witness = is_supercommuting_new(alg, m)
        out = {"algebra": alg.name, "definition": "new", "pass": witness is None,
               "witness": list(witness) if witness else None}
        return out, EXIT_OK if witness is None else EXIT_FAIL
    report = is_supercommuting_fan_dai(alg, m)
    out = {"algebra": alg.name, "definition": "fan-dai", **report.to_json()}
    return out, EXIT_OK if report.ok else EXIT_FAIL


def cmd_phi_psi(args):
    alg = load_algebra(args.algebra)
    b = load_bilinear(alg, args.bider)
    try:
        pair = extract_phi_psi(alg, b)
    except (ValueError, InconsistencyError) as exc:
        return {"algebra": alg.name, "pass": False, "reason": str(exc)}, EXIT_FAIL
    return {"algebra": alg.name, "pass": True, **pair.to_json()}, EXIT_OK


def cmd_deform(args):
    alg = load_algebra(args.algebra)
    b = load_bilinear(alg, args.bider)
    try:
        results = [deform(alg, b, lam).to_json() for lam in args.lambdas]
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    return results, EXIT_OK


def cmd_catalog(args):
    if args.action == "list":
        return [{"id": k, "description": v} for k, v in catalog.CATALOG_DESCRIPTIONS.items()], EXIT_OK
    alg = load_algebra("catalog:" + args.id)
    return catalog.to_json(alg), EXIT_OK


def cmd_verify_paper(args):
    report = run_verification(args.claim)
    return report.to_json(), EXIT_OK if report.ok else EXIT_FAIL


# -- output ------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, separators=(",", ":"))


def _table(rows, headers) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(s.rstrip() for s in out)


def render_human(payload) -> str:
    if isinstance(payload, dict) and "checks" in payload:
        rows = [[c["claim_id"], c["status"].upper(), c["detail"]] for c in payload["checks"]]
        s = payload["summary"]
        return _table(rows, ["claim", "status", "detail"]) + f"\n\n{s['passed']}/{s['total']} passed"
    if isinstance(payload, list):
        if payload and all(isinstance(p, dict) for p in payload):
            headers = [k for k in payload[0] if k != "brackets"]
            return _table([[_cell(p.get(k)) for k in headers] for p in payload], headers)
        return "\n".join(_cell(p) for p in payload)
    if isinstance(payload, dict):
        return _table([[k, _cell(v)] for k, v in payload.items()], ["field", "value"])
    return _cell(payload)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="supalg", description="Exact computations on finite-dimensional Lie superalgebras.")
    ap.add_argument("--human", action="store_true", help="render tables instead of JSON")
    sub = ap.add_subparsers(dest="command", required=True)
    # --human is accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", default=argparse.SUPPRESS)

    def with_algebra(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("--algebra", required=True, help="catalog:<id> or path to an algebra JSON file")
        p.set_defaults(func=func)
        return p

    with_algebra("check", cmd_check, "grading, super-skewsymmetry and graded Jacobi")
    with_algebra("center", cmd_center, "basis of the center")
    p = with_algebra("derivations", cmd_derivations, "superderivations of a given degree")
    p.add_argument("--degree", type=int, choices=(0, 1), required=True)
    p = with_algebra("type2", cmd_type2, "type-2 maps of a given degree")
    p.add_argument("--degree", type=int, choices=(0, 1), required=True)
    with_algebra("complete", cmd_complete, "completeness certificate")
    p = with_algebra("biderivations", cmd_biderivations, "superbiderivations of a given degree")
    p.add_argument("--degree", type=int, choices=(0, 1), required=True)
    p.add_argument("--definition", choices=[d.value for d in BiderDefinition], default="new")
    p = with_algebra("supercommuting", cmd_supercommuting, "linear supercommuting maps")
    p.add_argument("--definition", choices=("new", "fan-dai"), default="new")
    p.add_argument("--map", help="identity, zero, or a JSON file holding an n x n matrix; "
                                 "without it the 'new' solution space is printed")
    p = with_algebra("phi-psi", cmd_phi_psi, "factor a superbiderivation through multiplications")
    p.add_argument("--bider", default="bracket", help="'bracket' or a bilinear map JSON file")
    p = with_algebra("deform", cmd_deform, "deform the bracket by lambda * B")
    p.add_argument("--bider", required=True, help="'bracket' or a bilinear map JSON file")
    p.add_argument("--lambda", dest="lambdas", type=_lambda, action="append", required=True,
                   metavar="P/Q", help="repeatable")

    p = sub.add_parser("catalog", help="named algebras", parents=[common])
    csub = p.add_subparsers(dest="action", required=True)
    csub.add_parser("list", parents=[common])
    emit = csub.add_parser("emit", parents=[common])
    emit.add_argument("id")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-paper", help="replay every structural claim", parents=[common])
    p.add_argument("--json", action="store_true", help="JSON report (default is a table)")
    p.add_argument("--claim", action="append", help="restrict to a claim id (repeatable)")
    p.set_defaults(func=cmd_verify_paper)
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        payload, code = args.func(args)
    except CliError as exc:
        print(f"supalg: {exc}", file=stderr)
        return exc.code
    except (AxiomError, MembershipError) as exc:
        print(f"supalg: {exc}", file=stderr)
        return EXIT_FAIL
    human = args.human or (args.command == "verify-paper" and not args.json)
    if args.command == "catalog" and args.action == "emit" and not human:
        stdout.write(catalog.dumps(load_algebra("catalog:" + args.id)))
        return code
    stdout.write((render_human(payload) if human else json.dumps(payload, indent=2)) + "\n")
    return code


def main() -> None:
    sys.exit(run())

