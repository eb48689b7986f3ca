"""``ncg`` command line: inspect algebras, tabulate forms, build connections, verify.

Exit codes: 0 success (including an infeasibility finding), 1 verification
failure, 2 input or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from pathlib import Path

from . import fixtures as fx
from .algebra import (
    Algebra,
    PreconditionError,
    UnsupportedOperation,
    algebra_from_json,
    is_class_Cinf0,
    validate_algebra,
)
from .bimodule import ZModule, bimodule_from_json, derivation_zmodule, regular_bimodule, validate_bimodule
from . import connection as C
from .forms import Variant, calculus, dimension_table, minimal_forms, omega1_underline, out_forms
from . import metric as Mt
from .report import Report
from .suites import SUITES, SuiteConfig, run_suite, spot_curvature

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(ref: str) -> tuple[dict, str]:
    path = fx.fixture_path(ref)
    try:
        with open(path) as fh:
            return json.load(fh), str(path)
    except FileNotFoundError:
        raise InputError(f"{ref}: file not found (looked at {path})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_algebra(ref: str) -> Algebra:
    doc, path = _read_json(ref)
    try:
        A = algebra_from_json(doc, name=Path(path).stem)
    except (ValueError, TypeError, IndexError) as exc:
        raise InputError(f"{path}: {exc}") from None
    rep = validate_algebra(A)
    if not rep.passed:
        bad = rep.failures[0]
        raise InputError(f"{path}: {bad.detail or bad.name}")
    return A


def load_module(A: Algebra, ref: str):
    if ref in ("algebra", "A"):
        return regular_bimodule(A)
    if ref in ("omega1", "Omega1"):
        return omega1_underline(A)
    if ref in ("der", "Der"):
        return derivation_zmodule(A)
    doc, path = _read_json(ref)
    try:
        M = bimodule_from_json(A, doc)
    except (ValueError, KeyError, IndexError) as exc:
        raise InputError(f"{path}: {exc}") from None
    rep = validate_bimodule(A, M)
    if not rep.passed:
        raise InputError(f"{path}: {rep.failures[0].name} {rep.failures[0].detail}".strip())
    return M


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# ----------------------------------------------------------------------------
# commands


def cmd_inspect(args) -> tuple[Report, list[str]]:
    A = load_algebra(args.algebra)
    D = A.der
    res = {
        "dim": A.dim,
        "center_dim": A.center_space.dim,
        "der": D.dim,
        "int": D.inner.dim,
        "out": len(D.outer_reps),
        "cinf0": is_class_Cinf0(A),
        "involution": A.involution is not None,
    }
    rep = Report("inspect", results=res)
    lines = [
        f"dim {res['dim']}, Z dim {res['center_dim']}, Der {res['der']}, Int {res['int']}, Out {res['out']}, "
        f"C∞0: {_yes(res['cinf0'])}, involution: {_yes(res['involution'])}"
    ]
    return rep, lines


def cmd_forms(args) -> tuple[Report, list[str]]:
    A = load_algebra(args.algebra)
    n = args.max_degree
    variants = [v.value for v in Variant] if args.variant == "all" else [args.variant]
    rep = Report("forms")
    lines = []
    for v in variants:
        dims = dimension_table(A, n, v)
        rep.results[v] = dims
        lines.append(" ".join(map(str, dims)) if len(variants) == 1 else f"{v}: " + " ".join(map(str, dims)))
    calc = calculus(A)
    mins = minimal_forms(A, n)
    rep.check("minimal forms inside Z-multilinear forms", all(mins[k].space.is_subspace_of(calc.underline(k)) for k in range(n + 1)))
    rep.check(
        "basic minimal inside basic Z-multilinear",
        all(out_forms(A, k, Variant.OUT_MINIMAL).space.is_subspace_of(out_forms(A, k, Variant.OUT_UNDERLINE).space) for k in range(n + 1)),
    )
    return rep, lines


def cmd_connection(args) -> tuple[Report, list[str]]:
    A = load_algebra(args.algebra)
    M = load_module(A, args.module)
    rep = Report("connection")
    lines = []
    nabla = None
    if args.find:
        space = C.find_connections(A, M)
        if not space:
            rep.results["status"] = "infeasible"
            rep.results.update(space.to_json())
            lines.append(f"infeasible; witness row {space.witness_row}: {space.equation.describe()}")
            return rep, lines
        rep.results["status"] = "feasible"
        rep.results["model_dim"] = space.model_dim
        rep.results["connection"] = space.to_json()
        lines.append(f"feasible; model dim {space.model_dim}")
        nabla = space.particular
    elif args.canonical_inner:
        nabla = C.canonical_inner_connection(A, M)
    else:
        if args.module not in ("algebra", "A", "omega1", "Omega1"):
            raise PreconditionError("the Lie derivative connection acts on forms: use --module algebra or omega1")
        nabla = C.lie_connection(A, 0 if args.module in ("algebra", "A") else 1)
    val = C.validate_connection(nabla)
    rep.extend(val)
    if not args.find:
        rep.results["connection"] = nabla.to_json()
        lines.append(f"connection {nabla.name}: axioms {'verified' if val.passed else 'FAILED'}")
    if args.curvature:
        R = C.curvature(nabla)
        rep.results["flat"] = R.is_flat
        rep.extend(C.validate_curvature(R))
        rep.extend(C.bianchi_check(nabla, R))
        lines.append(f"flat: {_yes(R.is_flat)}")
    if args.torsion:
        lines.extend(_torsion_lines(A, nabla, rep, args))
    return rep, lines


def _torsion_lines(A, nabla, rep, args) -> list[str]:
    if isinstance(nabla.target, ZModule):
        T = C.torsion_on_der(nabla)
        rep.results["torsion_free"] = T.is_zero
        rep.extend(C.torsion_cross_check(nabla))
        return [f"torsion-free: {_yes(T.is_zero)}"]
    T = C.torsion_linear(nabla)
    rep.extend(T.report)
    rep.results["torsion_free"] = T.is_zero
    form = _match_torsion_formula(A, T)
    rep.results["torsion_formula"] = form
    if form:
        return [f"{form} verified"]
    return [f"torsion-free: {_yes(T.is_zero)}"]


def _match_torsion_formula(A, T) -> str:
    """Which closed form, if any, the torsion has on basis forms and basis pairs."""
    if T.is_zero:
        return "i_T = 0"
    O = T.source
    real = O.realization
    calc = real.calculus
    sc = A.der.structure_constants
    plus = minus = True
    for k in range(O.dim):
        w = real.form(tuple(A.one if i == k else A.zero for i in range(O.dim)))
        iw = T.apply(w)
        for a, b in combinations(range(A.der.dim), 2):
            lhs = calc.value(iw, (a, b))
            wxy = calc.value_at(w, [sc[a][b]])
            plus = plus and lhs == wxy
            minus = minus and lhs == tuple(-x for x in wxy)
    if plus:
        return "i_T(w)(X,Y) = w([X,Y])"
    if minus:
        return "i_T(w)(ad x, ad y) = -w(ad [x,y])"
    return ""


def cmd_levi_civita(args) -> tuple[Report, list[str]]:
    A = load_algebra(args.algebra)
    doc, path = _read_json(args.metric)
    try:
        g = Mt.pseudo_metric_from_json(A, doc)
    except (ValueError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from None
    lc = Mt.levi_civita(A, g)
    if not lc:
        rep = Report("levi-civita", results={"status": "none", "reason": lc.reason})
        return rep, [f"none: {lc.reason}"]
    rep = lc.report
    rep.title = "levi-civita"
    nabla = lc.connection
    rep.results["status"] = "unique"
    rep.results["connection"] = nabla.to_json()
    half = Mt.half_bracket_report(nabla)
    is_half = half.checks[0].passed
    rep.results["half_bracket"] = is_half
    parts = ["unique"]
    if is_half:
        parts.append("∇_XY = ½[X,Y] confirmed on basis")
        rep.results["curvature_minus_quarter_double_bracket"] = half.checks[1].passed
    by = {c.name: c.passed for c in rep.checks}
    parts.append(f"torsion-free: {_yes(by.get('torsion-free', False))}")
    parts.append(f"compatible: {_yes(by.get('metric compatible', False))}")
    if "real" in by:
        parts.append(f"real: {_yes(by['real'])}")
    lines = ["; ".join(parts)]
    if is_half and A.dim == 4 and set(A.basis_names) == {"e11", "e12", "e21", "e22"}:
        ok = spot_curvature(A, nabla)
        rep.check("R_{ad h, ad e}(ad f) = -1/2 ad h", ok)
        lines.append(f"R(ad h, ad e) ad f = -1/2 ad h: {_yes(ok)}")
    return rep, lines


def cmd_verify(args) -> tuple[Report, list[str]]:
    cfg = SuiteConfig(seed=args.seed, bianchi_samples=args.samples)
    rep = run_suite(args.suite, cfg)
    lines = rep.lines() if args.verbose else [line for line in rep.lines() if line.startswith("[FAIL]")]
    duality = rep.results.get("one-form duality verified on") or rep.results.get("duality", {}).get("one-form duality verified on")
    if duality and args.suite in ("duality", "all"):
        lines.append("one-form duality (a) and (b) verified on {" + ", ".join(duality) + "}")
    status = "PASS" if rep.passed else "FAIL"
    lines.append(f"{status}: {sum(c.passed for c in rep.checks)}/{len(rep.checks)} checks in suite {args.suite}")
    return rep, lines


# ----------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncg", description="Exact derivation-based differential calculus on finite-dimensional algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="print a machine-readable report")

    p = sub.add_parser("inspect", help="center, derivations and class of an algebra")
    p.add_argument("algebra", help="algebra JSON file or fixture name")
    common(p)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("forms", help="dimension table of the form algebras")
    p.add_argument("algebra")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--variant", default="underline", choices=[v.value for v in Variant] + ["all"])
    common(p)
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("connection", help="find or construct connections")
    p.add_argument("algebra")
    p.add_argument("--module", default="algebra", help="algebra, omega1, der, or a bimodule JSON file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--find", action="store_true")
    g.add_argument("--canonical-inner", action="store_true")
    g.add_argument("--lie", action="store_true")
    p.add_argument("--curvature", action="store_true")
    p.add_argument("--torsion", action="store_true")
    common(p)
    p.set_defaults(func=cmd_connection)

    p = sub.add_parser("levi-civita", help="solve for the Levi-Civita connection of a pseudo-metric")
    p.add_argument("algebra")
    p.add_argument("--metric", required=True)
    common(p)
    p.set_defaults(func=cmd_levi_civita)

    p = sub.add_parser("verify", help="run verification suites over the fixtures")
    p.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=SuiteConfig.seed)
    p.add_argument("--samples", type=int, default=SuiteConfig.bianchi_samples, help="Bianchi samples on the m2 one-forms")
    p.add_argument("-v", "--verbose", action="store_true")
    common(p)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep, lines = args.func(args)
    except (InputError, PreconditionError, UnsupportedOperation) as exc:
        kind = type(exc).__name__
        if getattr(args, "json", False):
            print(json.dumps({"command": args.command, "error": kind, "message": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code = EXIT_OK if rep.passed else EXIT_FAIL
    if args.json:
        out = rep.to_json()
        out["command"] = args.command
        out["exit_status"] = code
        print(json.dumps(out, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
