"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input
or usage.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable

from . import bundle_io, catalog
from . import rational as R
from .affine import etale_rep
from .catalog import CHECKS, Bundle
from .complexstruct import rmap_complex_structure
from .contact import lcs_of_semicontact, split_lcs
from .hessian import kahler_from_hessian, semisasakian_from_projective_hessian
from .liecore import structure_invariants, validate_lie
from .numcone import PotentialSpec, check_cone_scaling, check_invariance, check_tube, dump_csv
from .report import LieGeomError, PreconditionError, UnknownExample

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

CHECK_NAMES = {
    "lsa": "check_lsa",
    "radiant": "check_radiant",
    "projective": "check_projective",
    "complex": "check_complex_structure",
    "semicontact": "check_semicontact",
    "lcs": "check_lcs",
    "lck": "check_lck",
    "semisasakian": "check_semisasakian",
    "hessian": "check_hessian_metric",
    "hessian-cone": "check_hessian_cone",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(out, fmt: str, text: str, doc) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _emit_report(args, rep, started: float) -> int:
    doc = rep.to_dict()
    if args.timing:
        doc["elapsed_ms"] = round(1000 * (time.perf_counter() - started), 3)
    text = rep.render()
    if args.timing:
        text += f"\n  elapsed: {doc['elapsed_ms']} ms"
    _emit(args.out, args.format, text, doc)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _load(source: str) -> Bundle:
    if source.startswith("catalog:"):
        return catalog.load_example(source[len("catalog:"):])
    return bundle_io.load(source)


# ---------------------------------------------------------------------------
# constructions


def _c_etale(b: Bundle) -> Bundle:
    rep = etale_rep(b.algebra, b.conn())
    maps = {f"rho{i + 1}": M for i, M in enumerate(rep.mats)}
    return Bundle(b.name, b.algebra, b.connection, linmaps=maps, meta={"construction": "etale"})


def _c_rmap(b: Bundle) -> Bundle:
    g_nabla, cs = rmap_complex_structure(b.algebra, b.conn())
    return Bundle(
        "",
        g_nabla,
        linmaps={"J": cs.J},
        expected={"check_complex_structure": "pass"},
        meta={"construction": "rmap"},
    )


def _c_lcs(b: Bundle) -> Bundle:
    X = lcs_of_semicontact(b.semicontact_data())
    return Bundle(
        "",
        X.H,
        forms={"Omega": X.Omega, "theta": X.theta},
        vectors={"E": R.unit(X.H.dim, 0)},
        expected={"check_lcs": "pass"},
        meta={"construction": "lcs-of-semicontact"},
    )


def _c_split(b: Bundle) -> Bundle:
    S = split_lcs(b.lcs_data(), b.vector("E"))
    return Bundle(
        "",
        S.L,
        forms={"omega": S.omega, "eta": S.eta},
        linmaps={"D": S.D},
        meta={"construction": "split-lcs"},
    )


def _c_kahler(b: Bundle) -> Bundle:
    K = kahler_from_hessian(b.algebra, b.conn(), b.metric("g"))
    return Bundle(
        "",
        K.algebra,
        forms={"Omega": K.Omega},
        linmaps={"J": K.J},
        metrics={"g_real": K.g_real},
        meta={"construction": "kahler"},
    )


def _c_pipeline(b: Bundle) -> Bundle:
    out = semisasakian_from_projective_hessian(b.projective_data())
    S = out.data
    return Bundle(
        "",
        S.L,
        forms={"omega": S.omega, "eta": S.eta},
        linmaps={"D": S.D, "J": out.J},
        metrics={"g_real": out.g_real},
        expected={"check_semicontact": "pass", "check_semisasakian": "pass"},
        meta={
            "construction": "semisasakian-pipeline",
            "stages": [f"{name}: {verdict}" for name, verdict in out.stages],
            "note": "J and g_real act on R x L with the Euler generator first",
        },
    )


CONSTRUCTIONS: dict[str, Callable[[Bundle], Bundle]] = {
    "etale": _c_etale,
    "rmap": _c_rmap,
    "lcs-of-semicontact": _c_lcs,
    "split-lcs": _c_split,
    "kahler": _c_kahler,
    "semisasakian-pipeline": _c_pipeline,
}


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    t = time.perf_counter()
    return _emit_report(args, validate_lie(_load(args.file).algebra), t)


def cmd_check(args) -> int:
    t = time.perf_counter()
    b = _load(args.file)
    return _emit_report(args, CHECKS[CHECK_NAMES[args.which]](b), t)


def cmd_construct(args) -> int:
    b = _load(args.file)
    result = CONSTRUCTIONS[args.which](b)
    text = bundle_io.dumps(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        _emit(args.out, args.format, f"{args.which}: wrote {args.output}", {"construction": args.which, "output": args.output})
    else:
        args.out.write(text)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        names = catalog.available()
        _emit(args.out, args.format, "\n".join(names), names)
        return EXIT_OK
    if not args.name:
        raise UsageError(f"catalog {args.action} needs a name")
    b = catalog.load_example(args.name)
    if args.action == "export":
        text = bundle_io.dumps(b)
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            args.out.write(text)
        return EXIT_OK
    doc = bundle_io.to_document(b)
    _emit(args.out, args.format, _show(b), doc)
    return EXIT_OK


def _show(b: Bundle) -> str:
    L = b.algebra
    lines = [f"{b.name}: dim {L.dim}, basis {', '.join(L.labels)}"]
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            v = L.c[i][j]
            if any(v):
                lines.append(f"  [{L.labels[i]},{L.labels[j]}] = {_combo(v, L.labels)}")
    if b.connection is not None:
        lines.append("  connection: yes")
    for title, tab in (("forms", b.forms), ("linmaps", b.linmaps), ("metrics", b.metrics), ("vectors", b.vectors)):
        if tab:
            lines.append(f"  {title}: {', '.join(sorted(tab))}")
    for k, v in sorted(b.expected.items()):
        lines.append(f"  expect {k}: {v}")
    return "\n".join(lines)


def _combo(v, labels) -> str:
    parts = []
    for x, lab in zip(v, labels):
        if x:
            coef = "" if x == 1 else "-" if x == -1 else f"{x}*"
            parts.append(f"{coef}{lab}")
    return " + ".join(parts).replace("+ -", "- ")


def cmd_numcone(args) -> int:
    t = time.perf_counter()
    reports = []
    if args.which == "invariance":
        reports.append(check_invariance(PotentialSpec("log_char", args.n), args.samples, args.seed, tol=args.tol or 1e-6))
    elif args.which == "scaling":
        for q in args.q or [0.5, 2.0, 10.0]:
            reports.append(
                check_cone_scaling(PotentialSpec("cone_power", args.n), q, args.samples, args.seed, tol=args.tol or 1e-8)
            )
    else:
        reports.append(check_tube(PotentialSpec("log_char", args.n), args.samples, args.seed, tol=args.tol or 1e-6))
    if args.csv:
        for k, r in enumerate(reports):
            path = args.csv if len(reports) == 1 else f"{args.csv}.{k + 1}"
            dump_csv(r, path)
    ok = all(r.passed for r in reports)
    doc = {"verdict": "pass" if ok else "fail", "reports": [r.to_dict() for r in reports]}
    text = "\n".join(r.render() for r in reports)
    if args.timing:
        doc["elapsed_ms"] = round(1000 * (time.perf_counter() - t), 3)
        text += f"\nelapsed: {doc['elapsed_ms']} ms"
    _emit(args.out, args.format, text, doc)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invariants(args) -> int:
    inv = structure_invariants(_load(args.file).algebra)
    doc = inv.to_dict()
    text = "\n".join(f"{k}: {json.dumps(v)}" for k, v in doc.items())
    _emit(args.out, args.format, text, doc)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="append elapsed time to reports")

    p = _Parser(prog="liegeom", description="Exact checks for invariant geometric structures on Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    src_help = "bundle file, or catalog:<name>"

    s = sub.add_parser("validate", parents=[common], help="check antisymmetry and the Jacobi identity")
    s.add_argument("file", help=src_help)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", parents=[common], help="run a structure check")
    s.add_argument("which", choices=sorted(CHECK_NAMES))
    s.add_argument("file", help=src_help)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("construct", parents=[common], help="build a new bundle")
    s.add_argument("which", choices=sorted(CONSTRUCTIONS))
    s.add_argument("file", help=src_help)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("catalog", parents=[common], help="built-in examples")
    s.add_argument("action", choices=("list", "show", "export"))
    s.add_argument("name", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("numcone", parents=[common], help="numeric checks on the positive definite cone")
    s.add_argument("which", choices=("invariance", "scaling", "tube"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--tol", type=float)
    s.add_argument("--q", type=float, action="append", help="scaling factor (repeatable)")
    s.add_argument("--csv", help="write sampled metrics as CSV")
    s.set_defaults(func=cmd_numcone)

    s = sub.add_parser("invariants", parents=[common], help="structure invariants of the algebra")
    s.add_argument("file", help=src_help)
    s.set_defaults(func=cmd_invariants)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    args.out = out
    if args.command == "numcone" and (args.n < 1 or args.samples < 1):
        err.write("usage error: --n and --samples must be positive\n")
        return EXIT_INPUT
    try:
        return args.func(args)
    except PreconditionError as exc:
        if exc.report is not None:
            _emit(out, args.format, f"{exc}\n{exc.report.render()}", {"error": str(exc), "report": exc.report.to_dict()})
        else:
            err.write(f"error: {exc}\n")
        return EXIT_FAIL if exc.report is not None else EXIT_INPUT
    except UnknownExample as exc:
        err.write(f"error: {exc.args[0]}\n")
        return EXIT_INPUT
    except (LieGeomError, ValueError, OSError, UsageError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
