"""Serialization of analysis results: DOT graphs, metrics CSV, JSON reports, text tables."""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from . import __version__
from .analysis import Analysis, WhatIf
from .errors import Diagnostic
from .graph import InteractionGraph
from .interactions import Category, InteractionKind
from .metrics import CSV_COLUMNS, MEASURE_NAMES, ClassMetrics, MetricsTable
from .pca import PcaResult, SelectionReport

TOOL_NAME = "design-analyzer"
SCHEMA_VERSION = 1

_EDGE_STYLE = {
    Category.CLASS_CLASS: "solid",
    Category.OPERATION_OPERATION: "dashed",
    Category.DEPENDENCY_ONLY: "dotted",
}


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(graph: InteractionGraph, name: str = "design") -> str:
    """Render the graph as a DOT digraph with deterministic ordering."""
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for node in sorted(graph.nodes):
        simple = node.rsplit(".", 1)[-1]
        attrs = "" if simple == node else f" [label={_dot_id(simple)}]"
        lines.append(f"  {_dot_id(node)}{attrs};")
    for e in sorted(graph.edges, key=lambda e: (e.source, e.target, e.kind.order)):
        label = e.kind.value if e.evidence_count == 1 else f"{e.kind.value} x{e.evidence_count}"
        style = _EDGE_STYLE[e.kind.category]
        lines.append(f"  {_dot_id(e.source)} -> {_dot_id(e.target)} [label={_dot_id(label)}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_metrics_csv(table: MetricsTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("class", *CSV_COLUMNS))
    for row in sorted(table.rows, key=lambda r: r.class_name):
        writer.writerow((row.class_name, *row.values()))
    return buf.getvalue()


def parse_metrics_csv(text: str) -> MetricsTable:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != ("class", *CSV_COLUMNS):
        raise ValueError(f"unexpected metrics header: {header}")
    return MetricsTable(tuple(ClassMetrics(r[0], *map(int, r[1:])) for r in reader if r))


# ---------------------------------------------------------------------------
# JSON


def _num(x: Any) -> Any:
    if isinstance(x, bool) or isinstance(x, int):
        return x
    value = float(f"{float(x):.10g}")
    return 0.0 if value == 0 else value


def _diagnostic(d: Diagnostic) -> dict[str, Any]:
    return {"severity": d.severity, "file": d.file, "line": d.line, "message": d.message}


def _metrics(table: MetricsTable) -> dict[str, Any]:
    return {
        "measures": list(MEASURE_NAMES),
        "rows": [
            {"class": r.class_name, **dict(zip(CSV_COLUMNS, r.values()))}
            for r in sorted(table.rows, key=lambda r: r.class_name)
        ],
    }


def _interactions(analysis: Analysis) -> dict[str, Any]:
    by_category = {c.value: 0 for c in Category}
    for ev in analysis.evidences:
        by_category[ev.kind.category.value] += 1
    return {
        "total": len(analysis.evidences),
        "by_kind": analysis.evidences.count_by_kind(),
        "by_category": by_category,
        "edges": [
            {"source": e.source, "target": e.target, "kind": e.kind.value, "count": e.evidence_count}
            for e in analysis.graph.edges
        ],
    }


def pca_to_dict(result: PcaResult, mode: str) -> dict[str, Any]:
    return {
        "mode": mode,
        "labels": list(result.labels),
        "eigenvalues": [_num(v) for v in result.eigenvalues],
        "components": [[_num(v) for v in row] for row in result.eigenvectors],
        "retained_variance": [_num(v) for v in result.retained_variance],
        "column_means": [_num(v) for v in result.column_means],
        "covariance_divisor": result.divisor,
        "standardized": result.standardized,
    }


def selection_to_dict(sel: SelectionReport) -> dict[str, Any]:
    return {
        "mode": sel.mode,
        "chosen": sel.chosen_label,
        "component_count": sel.component_count,
        "fallback": sel.fallback,
        "loadings": {k: [_num(v) for v in vals] for k, vals in sel.loadings.items()},
        "rationale": [{"label": lab, "value": _num(v)} for lab, v in sel.rationale],
    }


def build_report(analysis: Analysis, selection: SelectionReport | None = None, mode: str | None = None) -> dict[str, Any]:
    model = analysis.model
    pca_part = None
    if selection is not None and selection.pca is not None:
        pca_part = pca_to_dict(selection.pca, mode or selection.mode)
    return {
        "schema": SCHEMA_VERSION,
        "summary": {
            "files": model.file_count,
            "classes": len(model.classes),
            "interfaces": sum(1 for c in model.classes if c.kind == "interface"),
            "nodes": len(analysis.graph.nodes),
            "edges": len(analysis.graph.edges),
        },
        "interactions": _interactions(analysis),
        "metrics": _metrics(analysis.table),
        "pca": pca_part,
        "selection": selection_to_dict(selection) if selection is not None else None,
        "diagnostics": [_diagnostic(d) for d in analysis.diagnostics],
        "tool": {"name": TOOL_NAME, "version": __version__},
    }


def build_whatif_report(result: WhatIf) -> dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "whatif": {
            "new": result.new_name,
            "connect": list(result.connect_to),
            "kind": result.kind.value,
        },
        "before": build_report(result.before),
        "after": build_report(result.after),
        "diff": [{"class": name, **dict(zip(CSV_COLUMNS, delta))} for name, delta in result.diff()],
        "changed": result.changed(),
        "tool": {"name": TOOL_NAME, "version": __version__},
    }


def emit_report_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


_COUNT = {"type": "integer", "minimum": 0}
_NUMBERS = {"type": "array", "items": {"type": "number"}}
_PCA_SCHEMA = {
    "type": "object",
    "required": ["mode", "labels", "eigenvalues", "components", "retained_variance",
                 "column_means", "covariance_divisor", "standardized"],
    "properties": {
        "labels": {"type": "array", "items": {"type": "string"}},
        "eigenvalues": _NUMBERS,
        "components": {"type": "array", "items": _NUMBERS},
        "retained_variance": _NUMBERS,
        "column_means": _NUMBERS,
        "covariance_divisor": {"const": "n"},
        "standardized": {"type": "boolean"},
    },
}
_SELECTION_SCHEMA = {
    "type": "object",
    "required": ["mode", "chosen", "component_count", "fallback", "loadings", "rationale"],
    "properties": {
        "mode": {"enum": ["MostSignificantMeasure", "LessResponsiveClass"]},
        "chosen": {"type": "string"},
        "component_count": {"type": "integer", "minimum": 1},
        "fallback": {"type": "boolean"},
        "loadings": {"type": "object", "additionalProperties": _NUMBERS},
        "rationale": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "value"],
                "properties": {"label": {"type": "string"}, "value": {"type": "number"}},
            },
        },
    },
}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "design-analyzer report",
    "type": "object",
    "required": ["schema", "summary", "interactions", "metrics", "pca", "selection", "diagnostics", "tool"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "summary": {
            "type": "object",
            "required": ["files", "classes", "interfaces", "nodes", "edges"],
            "properties": {k: _COUNT for k in ("files", "classes", "interfaces", "nodes", "edges")},
        },
        "interactions": {
            "type": "object",
            "required": ["total", "by_kind", "by_category", "edges"],
            "properties": {
                "total": _COUNT,
                "by_kind": {
                    "type": "object",
                    "required": [k.value for k in InteractionKind],
                    "additionalProperties": _COUNT,
                },
                "by_category": {"type": "object", "additionalProperties": _COUNT},
                "edges": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["source", "target", "kind", "count"],
                        "properties": {
                            "source": {"type": "string"},
                            "target": {"type": "string"},
                            "kind": {"enum": [k.value for k in InteractionKind]},
                            "count": {"type": "integer", "minimum": 1},
                        },
                    },
                },
            },
        },
        "metrics": {
            "type": "object",
            "required": ["measures", "rows"],
            "properties": {
                "measures": {"const": list(MEASURE_NAMES)},
                "rows": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["class", *CSV_COLUMNS],
                        "properties": {"class": {"type": "string"}, **{c: _COUNT for c in CSV_COLUMNS}},
                    },
                },
            },
        },
        "pca": {"oneOf": [{"type": "null"}, _PCA_SCHEMA]},
        "selection": {"oneOf": [{"type": "null"}, _SELECTION_SCHEMA]},
        "diagnostics": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["severity", "file", "line", "message"],
                "properties": {
                    "severity": {"enum": ["error", "warning", "info"]},
                    "file": {"type": "string"},
                    "line": _COUNT,
                    "message": {"type": "string"},
                },
            },
        },
        "tool": {
            "type": "object",
            "required": ["name", "version"],
            "properties": {"name": {"const": TOOL_NAME}, "version": {"type": "string"}},
        },
    },
}


# ---------------------------------------------------------------------------
# text tables


def _vector(values, width: int = 4) -> str:
    return "(" + ", ".join(f"{v:.{width}f}" for v in values) + ")"


def format_measure_tables(sel: SelectionReport) -> str:
    assert sel.pca is not None
    res = sel.pca
    out = ["Principal components of the coupling measures", ""]
    out.append("Measure order: " + ", ".join(res.labels))
    out.append(f"{'PC':>3}  {'Component vector':<60}  Eigenvalue")
    for k, (lam, vec) in enumerate(zip(res.eigenvalues, res.eigenvectors), start=1):
        out.append(f"{k:>3}  {_vector(vec):<60}  {lam:.4f}")
    out += ["", "Components  % variance retained"]
    for d, v in enumerate(res.retained_variance, start=1):
        out.append(f"{d:>10}  {100 * v:.2f}%")
    out += ["", "Loadings on PC1 by magnitude:"]
    out += [f"  {lab:<15} {v:.4f}" for lab, v in sel.rationale]
    out += ["", f"Most significant measure: {sel.chosen_label}"]
    return "\n".join(out) + "\n"


def format_class_table(sel: SelectionReport) -> str:
    assert sel.pca is not None
    res = sel.pca
    d = sel.component_count
    out = [f"Principal components over classes (first {d})", ""]
    out.append(f"{'#':>3}  {'class':<40}" + "".join(f"  {'PC' + str(k + 1):>8}" for k in range(d)))
    for j, lab in enumerate(res.labels, start=1):
        marker = " *" if all(v < 0 for v in sel.loadings[lab]) else ""
        out.append(
            f"{j:>3}  {lab:<40}" + "".join(f"  {v:>8.4f}" for v in sel.loadings[lab]) + marker
        )
    out.append("")
    for k in range(d):
        out.append(
            f"PC{k + 1}: eigenvalue {res.eigenvalues[k]:.4f}, "
            f"cumulative variance {100 * res.retained_variance[k]:.2f}%"
        )
    out.append("")
    if sel.fallback:
        out.append("No class is negative on every component; falling back to the lowest class coupling.")
    else:
        out.append("Classes negative on every component (*), by class coupling:")
    out += [f"  {lab:<40} class coupling {int(v)}" for lab, v in sel.rationale]
    out += ["", f"Recommended attachment point: {sel.chosen_label}"]
    return "\n".join(out) + "\n"


def format_diff(result: WhatIf) -> str:
    out = [f"What-if: add {result.new_name} -> {', '.join(result.connect_to) or '(nothing)'} ({result.kind.value})", ""]
    out.append(f"{'class':<40}" + "".join(f"  {c:>15}" for c in CSV_COLUMNS))
    for name, delta in result.diff():
        if any(delta) or name == result.new_name:
            tag = " (new)" if name == result.new_name else ""
            out.append(f"{name + tag:<40}" + "".join(f"  {v:>+15d}" for v in delta))
    return "\n".join(out) + "\n"
