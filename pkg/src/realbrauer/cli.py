"""Command-line entry point.

Exit codes: 0 success, 1 invalid input, 2 computation budget exceeded,
3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .cochains import CochainError
from .coefficients import CoefficientError, RealCoefficient
from .cohomology import (BudgetExceeded, EngineConfig, brute_force_cohomology,
                         cohomology, fold_double, invariant_real_functions)
from .extensions import ExtensionError, brauer_group, extension_group
from .graded_types import (ModelError, classify_type, dumps_model, model_from_dict,
                           reference_model, type_table)
from .groupoid import GroupoidError, make_swap_double, nerve
from .io import (InputError, dumps, fraction_text, load_groupoid, read_json,
                 read_extension_pairs, to_explicit)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_ORACLE = 0, 1, 2, 3
CAYLEY_LIMIT = 64


class OracleMismatch(RuntimeError):
    pass


class Report:
    """Collects text lines and a structured record for one command."""

    def __init__(self, argv: List[str]):
        self.lines: List[str] = []
        self.data = {"command": list(argv), "input_sha256": {}, "results": {},
                     "oracle": "not run", "warnings": []}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def warn(self, text: str) -> None:
        self.data["warnings"].append(text)
        self.lines.append(f"warning: {text}")


def _config(args) -> EngineConfig:
    return EngineConfig(max_degree=args.max_degree, budget=args.budget)


def _groupoid(args, report):
    G, digest = load_groupoid(args.groupoid)
    report.data["input_sha256"]["groupoid"] = digest
    return G


def cmd_validate(args, report):
    G = _groupoid(args, report)
    report.line(f"valid: {G.name}")
    report.line(f"objects = {G.n_objects}, arrows = {G.n_arrows}, "
                f"components = {len(G.components)}")
    fixed = sum(1 for g, t in enumerate(G.involution_arr) if g == t)
    report.line(f"involution fixes {fixed} of {G.n_arrows} arrows")
    report.data["results"] = {"name": G.name, "objects": G.n_objects,
                              "arrows": G.n_arrows, "fixed_arrows": fixed,
                              "explicit": to_explicit(G)}


def cmd_nerve(args, report):
    G = _groupoid(args, report)
    level = nerve(G, args.degree)
    orbits = level.orbits
    fixed = sum(1 for r in orbits.reps if orbits.kind[r] == "fixed")
    report.line(f"|G^({args.degree})| = {len(level)}")
    report.line(f"fixed simplices = {fixed}, free orbits = {len(orbits.reps) - fixed}")
    if args.list:
        for i, s in enumerate(level.simplices):
            report.line(f"  {i}: {tuple(s)} -> {level.involution[i]}")
    report.data["results"] = {"degree": args.degree, "size": len(level),
                              "fixed": fixed, "free_orbits": len(orbits.reps) - fixed}


def cmd_cohomology(args, report):
    G = _groupoid(args, report)
    A = RealCoefficient.parse(args.coeff)
    config = _config(args)
    H = cohomology(G, args.degree, A, config)
    report.line(f"HR^{args.degree} = {H}")
    report.data["results"] = {"degree": args.degree, "coefficient": str(A),
                              "group": H.to_dict()}
    if args.oracle:
        if A.is_circle or not A.is_finite:
            if args.degree != 0:
                report.data["oracle"] = "unavailable for infinite coefficients in positive degree"
                report.line("oracle: unavailable for infinite coefficients in positive degree")
                return
            O = invariant_real_functions(G, A)
            label = "invariant functions"
        else:
            O = brute_force_cohomology(G, args.degree, A, config.budget)
            label = "brute force"
        if O != H:
            report.data["oracle"] = f"MISMATCH ({label} gives {O})"
            raise OracleMismatch(f"oracle mismatch: {label} gives {O}, engine gives {H}")
        report.data["oracle"] = "OK"
        report.line(f"oracle ({label}): OK")


def cmd_brauer(args, report):
    G = _groupoid(args, report)
    B = brauer_group(G)
    r = B.report()
    report.line(f"groupoid: {G.name}")
    report.line(f"HR^0(Z8) = {r.type_component}")
    report.line(f"HR^1(Z2) = {r.grading_component}")
    report.line(f"HR^2(S1) = {r.twist_component}")
    report.line(f"Ext = {r.extension}  (splits: {'yes' if r.splits else 'no'})")
    report.line(f"Br = {r.total}")
    report.line(f"order = {r.order}, cyclic = {'yes' if r.total.is_cyclic else 'no'}")
    for w in r.warnings:
        report.warn(w)
    report.data["results"] = r.to_dict()
    if args.table:
        if r.order > CAYLEY_LIMIT:
            raise BudgetExceeded(f"Cayley table limited to order {CAYLEY_LIMIT}, group has order {r.order}")
        elems = B.elements()
        index = {b: i for i, b in enumerate(elems)}
        table = [[index[B.add(a, b)] for b in elems] for a in elems]
        report.line("elements (type; delta; omega):")
        for i, b in enumerate(elems):
            report.line(f"  {i}: {b.type_class}; {b.graded_class.delta}; {b.graded_class.omega}")
        report.line("table:")
        width = len(str(len(elems) - 1))
        for row in table:
            report.line("  " + " ".join(str(x).rjust(width) for x in row))
        report.data["results"]["elements"] = [b.to_dict() for b in elems]
        report.data["results"]["table"] = table


def cmd_ext(args, report):
    G = _groupoid(args, report)
    X = extension_group(G)
    data, digest = read_json(args.infile)
    report.data["input_sha256"]["cocycles"] = digest
    pairs = read_extension_pairs(data, G.n_arrows, len(nerve(G, 2)))
    need = 2 if args.op == "mul" else 1
    if len(pairs) != need:
        raise InputError(f"ext {args.op} needs {need} class(es), got {len(pairs)}")
    for d, w in pairs:
        X.check_delta(d)
        X.check_omega(w)
    classes = [X.normal_form(d, w) for d, w in pairs]
    if args.op == "mul":
        d, w = X.multiply_cocycles(*pairs)
    else:
        d, w = X.inverse_cocycles(pairs[0])
    result = X.normal_form(d, w)
    for i, c in enumerate(classes):
        report.line(f"input {i}: delta = {c.delta}, omega = {c.omega}")
    report.line(f"result: delta = {result.delta}, omega = {result.omega}")
    report.data["results"] = {
        "delta_orders": list(X.delta_orders), "omega_orders": list(X.omega_orders),
        "inputs": [c.to_dict() for c in classes], "result": result.to_dict(),
        "cocycle": {"delta": d, "omega": [fraction_text(x) for x in w]}}


def cmd_types(args, report):
    if args.action == "table":
        T = type_table(args.seed)
        ok = all(T[p][q] == (p + q) % 8 for p in range(8) for q in range(8))
        report.line("    " + " ".join(f"K{q}" for q in range(8)))
        for p in range(8):
            report.line(f"K{p}  " + " ".join(f"{T[p][q]:>2}" for q in range(8)))
        report.line(f"addition mod 8: {'OK' if ok else 'FAILED'}")
        report.data["results"] = {"table": T, "additive": ok}
        if not ok:
            raise OracleMismatch("type table differs from addition mod 8")
    elif args.action == "classify":
        if not args.infile:
            raise InputError("types classify needs --in")
        data, digest = read_json(args.infile)
        report.data["input_sha256"]["model"] = digest
        if not isinstance(data, dict):
            raise InputError("model file must hold a JSON object")
        t = classify_type(model_from_dict(data), args.seed)
        report.line(str(t))
        report.data["results"] = {"p": t.p, "parity": t.parity,
                                  "descriptor": [t.parity, t.first, t.sign]}
    else:
        if args.p is None:
            raise InputError("types model needs --p")
        sys.stdout.write(dumps_model(reference_model(args.p)) + "\n")
        report.data["results"] = {"p": args.p % 8}


def cmd_fold(args, report):
    H = _groupoid(args, report)
    A = RealCoefficient.parse(args.coeff)
    config = _config(args)
    plain = fold_double(H, args.degree, A, config)
    double = cohomology(make_swap_double(H), args.degree, A, config)
    report.line(f"H^{args.degree}({H.name}) = {plain}")
    report.line(f"HR^{args.degree}(swap double) = {double}")
    report.data["results"] = {"single": plain.to_dict(), "double": double.to_dict()}
    if plain != double:
        report.data["oracle"] = "MISMATCH"
        raise OracleMismatch("folding isomorphism fails")
    report.data["oracle"] = "OK"
    report.line("folding: OK")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="realbrauer", description=__doc__.splitlines()[0])
    ap.add_argument("--report", help="write a JSON report to this file")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, groupoid=True):
        if groupoid:
            p.add_argument("--groupoid", required=True)
        p.add_argument("--max-degree", type=int, default=4)
        p.add_argument("--budget", type=int, default=2 ** 24)
        p.add_argument("--report", default=argparse.SUPPRESS)

    p = sub.add_parser("validate", help="check the groupoid axioms")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("nerve", help="nerve level sizes")
    common(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("cohomology", help="Real cohomology groups")
    common(p)
    p.add_argument("--coeff", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("brauer", help="Real graded Brauer group")
    common(p)
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=cmd_brauer)

    p = sub.add_parser("ext", help="graded extension arithmetic")
    p.add_argument("op", choices=["mul", "inv"])
    common(p)
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("types", help="type arithmetic of graded algebra models")
    p.add_argument("action", choices=["table", "classify", "model"])
    common(p, groupoid=False)
    p.add_argument("--in", dest="infile")
    p.add_argument("--p", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_types)

    p = sub.add_parser("fold", help="compare a swap double with its single piece")
    common(p)
    p.add_argument("--coeff", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_fold)
    return ap


def run(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    report = Report(argv)
    code, error = EXIT_OK, ""
    try:
        args.func(args, report)
    except BudgetExceeded as exc:
        code, error = EXIT_BUDGET, f"budget exceeded: {exc}"
    except OracleMismatch as exc:
        code, error = EXIT_ORACLE, str(exc)
    except (InputError, GroupoidError, CoefficientError, CochainError, ModelError,
            ExtensionError, ValueError) as exc:
        code, error = EXIT_INPUT, f"invalid input: {exc}"
    report.data["exit_code"] = code
    if error:
        report.data["error"] = error
    if report.lines:
        sys.stdout.write("\n".join(report.lines) + "\n")
    if error:
        sys.stderr.write(f"error: {error}\n")
    if getattr(args, "report", None):
        Path(args.report).write_text(dumps(report.data))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
