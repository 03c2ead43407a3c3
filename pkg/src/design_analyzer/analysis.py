"""End-to-end pipeline: discover sources, parse, extract, build the graph, measure."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import Diagnostic, ValidationError
from .graph import InteractionGraph, add_virtual_module, build_graph
from .interactions import Interaction, InteractionKind, InteractionSet, extract_all
from .metrics import MetricsTable, metrics_table
from .source_model import CodebaseModel, build_codebase

VIRTUAL_FILE = "<virtual>"


@dataclass(frozen=True)
class Analysis:
    model: CodebaseModel
    evidences: InteractionSet
    graph: InteractionGraph
    table: MetricsTable
    diagnostics: tuple[Diagnostic, ...]

    @property
    def file_count(self) -> int:
        return self.model.file_count


def discover_java_files(paths: Iterable[str | Path]) -> list[Path]:
    """All ``.java`` files under ``paths`` (files given directly are kept), sorted and unique."""
    found: set[Path] = set()
    for p in map(Path, paths):
        if p.is_dir():
            found.update(f for f in p.rglob("*.java") if f.is_file())
        elif p.is_file() and p.suffix == ".java":
            found.add(p)
    return sorted(found, key=lambda f: f.as_posix())


def read_sources(files: Sequence[Path]) -> tuple[list[tuple[str, str]], list[Diagnostic]]:
    sources, diagnostics = [], []
    for f in files:
        try:
            sources.append((f.as_posix(), f.read_text(encoding="utf-8")))
        except (OSError, UnicodeDecodeError) as exc:
            diagnostics.append(Diagnostic("warning", f.as_posix(), 0, f"file skipped: {exc}"))
    return sources, diagnostics


def analyze_sources(sources: Iterable[tuple[str, str]], extra: Sequence[Diagnostic] = ()) -> Analysis:
    model = build_codebase(sources)
    evidences = extract_all(model)
    graph = build_graph(model, evidences)
    table = metrics_table(model, evidences, graph)
    return Analysis(model, evidences, graph, table, (*extra, *model.diagnostics))


def analyze_paths(paths: Iterable[str | Path]) -> Analysis:
    sources, diagnostics = read_sources(discover_java_files(paths))
    return analyze_sources(sources, diagnostics)


@dataclass(frozen=True)
class WhatIf:
    before: Analysis
    after: Analysis
    new_name: str
    connect_to: tuple[str, ...]
    kind: InteractionKind

    def diff(self) -> list[tuple[str, tuple[int, ...]]]:
        """Per-class deltas of all six measures, after minus before (zeros for unchanged)."""
        rows = []
        for row in self.after.table.rows:
            try:
                old = self.before.table.row(row.class_name).values()
            except KeyError:
                old = (0,) * 6
            rows.append((row.class_name, tuple(a - b for a, b in zip(row.values(), old))))
        return rows

    def changed(self) -> list[str]:
        return [name for name, delta in self.diff() if any(delta) and name != self.new_name]


def resolve_class_name(analysis: Analysis, name: str) -> str:
    """Accept a qualified name or an unambiguous simple name."""
    if name in analysis.model:
        return name
    matches = analysis.model.resolve(name)
    if len(matches) == 1:
        return matches[0]
    if matches:
        raise ValidationError(f"class name {name!r} is ambiguous: {', '.join(matches)}")
    raise ValidationError(f"unknown class {name!r}")


def what_if(
    analysis: Analysis,
    new_name: str,
    connect_to: Sequence[str],
    kind: InteractionKind = InteractionKind.OBJECT_DECLARATION,
) -> WhatIf:
    """Attach a virtual class depending on ``connect_to`` and recompute every measure."""
    if new_name in analysis.model or analysis.model.resolve(new_name):
        raise ValidationError(f"class {new_name!r} already exists in the code base")
    targets = tuple(dict.fromkeys(resolve_class_name(analysis, n) for n in connect_to))
    graph = add_virtual_module(analysis.graph, new_name, targets, kind)
    virtual = [Interaction(new_name, t, kind, VIRTUAL_FILE, 0, new_name) for t in targets]
    evidences = analysis.evidences.with_extra(virtual, [new_name])
    table = metrics_table(analysis.model, evidences, graph)
    after = Analysis(analysis.model, evidences, graph, table, analysis.diagnostics)
    return WhatIf(analysis, after, new_name, targets, kind)
