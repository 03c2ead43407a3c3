"""Command-line entry point: ``design-analyzer analyze|pca|whatif|recommend``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .analysis import Analysis, analyze_paths, discover_java_files, what_if
from .errors import DegenerateDataError, EmptyCodebaseError, ValidationError
from .interactions import InteractionKind
from .pca import less_responsive_class, most_significant_measure
from .report import (
    build_report,
    build_whatif_report,
    emit_dot,
    emit_metrics_csv,
    emit_report_json,
    format_class_table,
    format_diff,
    format_measure_tables,
)

EXIT_OK = 0
EXIT_STRICT = 1
EXIT_NO_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_WHATIF = 4

_KIND_CHOICES = ("object-declaration", "inheritance", "parameter", "return-type")


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _styled(text: str, code: str, stream) -> str:
    if os.environ.get("DESIGN_ANALYZER_NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _load(paths: Sequence[str], strict: bool = False) -> Analysis:
    if not discover_java_files(paths):
        raise _Exit(EXIT_NO_INPUT, "no .java files found under: " + " ".join(paths))
    try:
        analysis = analyze_paths(paths)
    except EmptyCodebaseError as exc:
        raise _Exit(EXIT_NO_INPUT, str(exc)) from None
    for d in analysis.diagnostics:
        print(_styled(str(d), "33", sys.stderr), file=sys.stderr)
    if strict and any(d.severity in ("warning", "error") for d in analysis.diagnostics):
        raise _Exit(EXIT_STRICT, "aborting: parse diagnostics under --strict")
    return analysis


def _summary(analysis: Analysis) -> str:
    counts = analysis.evidences.count_by_kind()
    lines = [
        f"{analysis.file_count} files, {len(analysis.model.classes)} classes, "
        f"{len(analysis.evidences)} interaction evidences, {len(analysis.graph.edges)} edges",
        "  " + ", ".join(f"{k}={v}" for k, v in counts.items()),
    ]
    return "\n".join(lines) + "\n"


def cmd_analyze(args: argparse.Namespace) -> int:
    analysis = _load(args.paths, args.strict)
    _write(args.dot, emit_dot(analysis.graph))
    _write(args.csv, emit_metrics_csv(analysis.table))
    _write(args.json, emit_report_json(build_report(analysis)))
    sys.stdout.write(_styled(_summary(analysis), "1", sys.stdout))
    if not args.csv:
        sys.stdout.write(emit_metrics_csv(analysis.table))
    return EXIT_OK


def _select(analysis: Analysis, mode: str, args: argparse.Namespace):
    try:
        if mode == "measures":
            return most_significant_measure(
                analysis.table, components=args.components or 2, standardize=args.standardize
            )
        return less_responsive_class(
            analysis.table,
            args.variance_target,
            components=args.components,
            standardize=args.standardize,
        )
    except DegenerateDataError as exc:
        raise _Exit(EXIT_DEGENERATE, f"PCA not possible: {exc}") from None


def cmd_pca(args: argparse.Namespace) -> int:
    analysis = _load(args.paths)
    sel = _select(analysis, args.mode, args)
    text = format_measure_tables(sel) if args.mode == "measures" else format_class_table(sel)
    sys.stdout.write(text)
    _write(args.json, emit_report_json(build_report(analysis, sel, args.mode)))
    return EXIT_OK


def cmd_recommend(args: argparse.Namespace) -> int:
    analysis = _load(args.paths)
    args.variance_target, args.components, args.standardize = 0.95, None, False
    sel = _select(analysis, "classes", args)
    how = "lowest class coupling (no class is negative on all components)" if sel.fallback else (
        f"negative loading on all {sel.component_count} leading component(s)"
    )
    coupling = analysis.table.row(sel.chosen_label).class_coupling
    sys.stdout.write(
        _styled(f"Attach the new module to {sel.chosen_label}", "1", sys.stdout)
        + f"\n  reason: {how}; class coupling {coupling}\n"
    )
    _write(args.json, emit_report_json(build_report(analysis, sel, "classes")))
    return EXIT_OK


def cmd_whatif(args: argparse.Namespace) -> int:
    analysis = _load(args.paths)
    targets = [t.strip() for t in (args.connect or "").split(",") if t.strip()]
    try:
        result = what_if(analysis, args.new, targets, InteractionKind.from_cli(args.kind))
    except ValidationError as exc:
        raise _Exit(EXIT_WHATIF, str(exc)) from None
    _write(args.dot_before, emit_dot(result.before.graph))
    _write(args.dot_after, emit_dot(result.after.graph))
    _write(args.json, emit_report_json(build_whatif_report(result)))
    sys.stdout.write(format_diff(result))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="design-analyzer",
        description="Recover the class interaction graph of Java code and analyze its coupling.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="parse sources and emit the graph and metrics")
    p.add_argument("paths", nargs="+")
    p.add_argument("--dot", metavar="FILE")
    p.add_argument("--csv", metavar="FILE")
    p.add_argument("--json", metavar="FILE")
    p.add_argument("--strict", action="store_true", help="fail on any parse diagnostic")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pca", help="principal component analysis of the metrics")
    p.add_argument("paths", nargs="+")
    p.add_argument("--mode", choices=("measures", "classes"), required=True)
    p.add_argument("--variance-target", type=float, default=0.95)
    p.add_argument("--components", type=int, metavar="N")
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_pca)

    p = sub.add_parser("whatif", help="add a virtual module and diff the metrics")
    p.add_argument("paths", nargs="+")
    p.add_argument("--new", required=True, metavar="NAME")
    p.add_argument("--connect", default="", metavar="A,B,...")
    p.add_argument("--kind", choices=_KIND_CHOICES, default="object-declaration")
    p.add_argument("--dot-before", metavar="FILE")
    p.add_argument("--dot-after", metavar="FILE")
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_whatif)

    p = sub.add_parser("recommend", help="suggest where to attach a new module")
    p.add_argument("paths", nargs="+")
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_recommend)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(_styled(f"design-analyzer: {exc}", "31", sys.stderr), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
