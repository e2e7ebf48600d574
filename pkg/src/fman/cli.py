"""Command-line entry point: ``fman <verb> ...``.

stdout carries the report, stderr carries diagnostics.  Exit codes: 0 when
the analysis completed, 1 when an axiom failed, 2 for input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .inputs import InputError, InputSpec, catalog, load_example, parse_input
from .report import (
    EXIT_AXIOM,
    EXIT_INPUT,
    EXIT_OK,
    ReportIntegrityError,
    emit_report,
    run_analysis,
)


def _use_color() -> bool:
    return os.environ.get("FMAN_COLOR", "1") != "0" and sys.stderr.isatty()


def diag(msg: str, level: str = "error") -> None:
    if _use_color():
        code = {"error": "31", "warn": "33", "info": "36"}.get(level, "0")
        msg = f"\x1b[{code}m{msg}\x1b[0m"
    print(msg, file=sys.stderr)


def load_spec(source: str) -> InputSpec:
    """A path to a JSON file, or the name of a bundled example."""
    path = Path(source)
    if path.is_file():
        try:
            return parse_input(path.read_bytes())
        except OSError as exc:
            raise InputError(f"{source}: {exc}") from exc
    if path.suffix == ".json" and path.parent != Path("."):
        raise InputError(f"{source}: no such file")
    return load_example(source)


def _write(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _analyze_one(source: str, fmt: str | None, timings: bool, **kw):
    """Returns (exit_code, report_bytes, diagnostics)."""
    try:
        spec = load_spec(source)
    except InputError as exc:
        return EXIT_INPUT, b"", [f"{source}: {exc}"]
    fmt = fmt or spec.options.get("report_format", "json")
    try:
        r = run_analysis(spec, **kw) if spec.kind == "poly-manifold" else run_analysis(spec)
        out = emit_report(r, fmt, timings=timings)
    except ReportIntegrityError as exc:
        return EXIT_AXIOM, b"", [str(exc)]
    notes = [f"{source}: {k} {v * 1000:.1f} ms" for k, v in r.timings.items()] if timings else []
    if r.exit_code == EXIT_AXIOM:
        notes.append(f"{source}: axiom check failed; report is partial")
    return r.exit_code, out, notes


def _need_kind(spec: InputSpec, kind: str, verb: str) -> None:
    if spec.kind != kind:
        raise InputError(f"'{verb}' expects a {kind} input, got {spec.kind}")


def _section(source: str, verb: str, keys: tuple) -> int:
    spec = load_spec(source)
    _need_kind(spec, "algebra", verb)
    r = run_analysis(spec)
    d = r.to_dict()
    out = {k: d[k] for k in ("name", "dim", "axioms", "complete") + keys if k in d}
    _write((json.dumps(out, sort_keys=True, indent=2) + "\n").encode())
    if r.exit_code:
        diag(f"{source}: axiom check failed")
    return r.exit_code


def cmd_verify(args) -> int:
    spec = load_spec(args.file)
    if spec.kind == "poly-manifold":
        r = run_analysis(spec, degree_bound=0)
        out = {"name": spec.name, "hm_zero": r.hm_zero, "hm_witness": r.hm_witness}
        _write((json.dumps(out, sort_keys=True, indent=2) + "\n").encode())
        return r.exit_code
    return _section(args.file, "verify", ("is_poisson", "leibnizator"))


def cmd_analyze(args) -> int:
    kw = {}
    if args.degree is not None:
        kw["degree_bound"] = args.degree
    jobs = max(1, args.jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(lambda f: _analyze_one(f, args.format, args.timings, **kw), args.files))
    worst = EXIT_OK
    for code, out, notes in results:
        for note in notes:
            diag(note, "error" if code else "info")
        _write(out)
        worst = max(worst, code)
    return worst


def cmd_dpois(args) -> int:
    return _section(args.file, "dpois", ("leibnizator", "dpois"))


def cmd_holonomy(args) -> int:
    return _section(args.file, "holonomy", ("flat", "curvature", "holonomy", "inclusions"))


def _parse_point(text: str) -> tuple:
    from fractions import Fraction

    try:
        return tuple(Fraction(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad point {text!r}: {exc}") from exc


def cmd_coord_check(args) -> int:
    spec = load_spec(args.file)
    _need_kind(spec, "poly-manifold", "coord-check")
    n = spec.payload.nvars
    leaf = None
    if args.leaf_vars:
        leaf = tuple(sorted(set(args.leaf_vars)))
        if any(not 1 <= l <= n for l in leaf):
            raise InputError(f"--leaf-vars must lie in 1..{n}")
    points = None
    if args.point:
        points = [_parse_point(p) for p in args.point]
        if any(len(p) != n for p in points):
            raise InputError(f"every --point needs {n} coordinates")
    if args.degree is not None and args.degree < 0:
        raise InputError("--degree must be non-negative")
    r = run_analysis(spec, degree_bound=args.degree, leaf_vars=leaf, points=points)
    _write(emit_report(r, args.format or spec.options.get("report_format", "json")))
    if r.exit_code:
        diag(f"{args.file}: Hertling-Manin tensor does not vanish")
    return r.exit_code


def cmd_catalog(args) -> int:
    rows = catalog()
    if args.json:
        _write((json.dumps([{"name": n, "kind": k, "description": d} for n, k, d in rows], indent=2) + "\n").encode())
        return EXIT_OK
    width = max(len(n) for n, _, _ in rows)
    for name, kind, desc in rows:
        print(f"{name.ljust(width)}  {kind:<13}  {desc}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        diag(f"{self.prog}: {message}")
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fman", description="Exact analysis of F_man-algebras and polynomial F-manifold charts.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check the axioms of an input")
    v.add_argument("file", help="JSON file or bundled example name")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="full report for one or more inputs")
    a.add_argument("files", nargs="+", metavar="file")
    a.add_argument("--format", choices=("json", "md"))
    a.add_argument("--jobs", type=int, default=1, help="analyze files concurrently")
    a.add_argument("--degree", type=int, help="degree bound for polynomial charts")
    a.add_argument("--timings", action="store_true", help="include timings in the report")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("dpois", help="Poisson-algebra distribution fiber and closures")
    d.add_argument("file")
    d.set_defaults(func=cmd_dpois)

    h = sub.add_parser("holonomy", help="curvature, holonomy algebra and inclusion checks")
    h.add_argument("file")
    h.set_defaults(func=cmd_holonomy)

    c = sub.add_parser("coord-check", help="polynomial chart: HM tensor, ansatz, splitting")
    c.add_argument("file")
    c.add_argument("--degree", type=int)
    c.add_argument("--leaf-vars", type=int, nargs="+", metavar="L")
    c.add_argument("--point", action="append", help="comma-separated coordinates; repeatable")
    c.add_argument("--format", choices=("json", "md"))
    c.set_defaults(func=cmd_coord_check)

    g = sub.add_parser("catalog", help="list bundled examples")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        diag(f"input error: {exc}")
        return EXIT_INPUT
    except ReportIntegrityError as exc:
        diag(str(exc))
        return EXIT_AXIOM


if __name__ == "__main__":
    sys.exit(main())
