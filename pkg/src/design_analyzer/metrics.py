"""The six per-class coupling measures and the class-by-measure table."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import astuple, dataclass

import numpy as np

from .errors import UnknownClassError
from .graph import InteractionGraph
from .interactions import DEPENDENCY_KINDS, InteractionSet
from .source_model import CodebaseModel, Visibility

MEASURE_NAMES = ("NUCD", "TNUCD", "NUCC", "TNUCC", "ClassCoupling", "VisibleMembers")
CSV_COLUMNS = ("nucd", "tnucd", "nucc", "tnucc", "class_coupling", "visible_members")


@dataclass(frozen=True)
class ClassMetrics:
    class_name: str
    nucd: int
    tnucd: int
    nucc: int
    tnucc: int
    class_coupling: int
    visible_members: int

    def values(self) -> tuple[int, ...]:
        return astuple(self)[1:]


@dataclass(frozen=True)
class MetricsTable:
    rows: tuple[ClassMetrics, ...]
    measure_names: tuple[str, ...] = MEASURE_NAMES

    @property
    def class_names(self) -> list[str]:
        return [r.class_name for r in self.rows]

    def row(self, name: str) -> ClassMetrics:
        for r in self.rows:
            if r.class_name == name:
                return r
        raise UnknownClassError(name)

    def to_matrix(self) -> np.ndarray:
        """n classes x 6 measures, as float64."""
        return np.array([r.values() for r in self.rows], dtype=float).reshape(len(self.rows), 6)


def _check(evidences: InteractionSet, name: str) -> None:
    if name not in evidences.classes:
        raise UnknownClassError(name)


def nucd(evidences: InteractionSet, name: str) -> int:
    _check(evidences, name)
    return len({e.target_class for e in evidences if e.source_class == name and e.kind in DEPENDENCY_KINDS})


def tnucd(evidences: InteractionSet, name: str) -> int:
    _check(evidences, name)
    return sum(1 for e in evidences if e.source_class == name and e.kind in DEPENDENCY_KINDS)


def nucc(evidences: InteractionSet, name: str) -> int:
    _check(evidences, name)
    return len({e.source_class for e in evidences if e.target_class == name and e.kind in DEPENDENCY_KINDS})


def tnucc(evidences: InteractionSet, name: str) -> int:
    _check(evidences, name)
    return sum(1 for e in evidences if e.target_class == name and e.kind in DEPENDENCY_KINDS)


def visible_members(model: CodebaseModel, name: str) -> int:
    """Declared non-private fields and methods (constructors included)."""
    if name not in model:
        raise UnknownClassError(name)
    cls = model.get(name)
    members = (*cls.fields, *cls.methods)
    return sum(1 for m in members if m.visibility is not Visibility.PRIVATE)


def metrics_table(model: CodebaseModel, evidences: InteractionSet, graph: InteractionGraph) -> MetricsTable:
    """One row per graph node, sorted by name.

    Nodes absent from ``model`` (virtual what-if modules) have no declared
    members and report zero visible members.
    """
    used: dict[str, set[str]] = defaultdict(set)
    users: dict[str, set[str]] = defaultdict(set)
    out_total: dict[str, int] = defaultdict(int)
    in_total: dict[str, int] = defaultdict(int)
    for e in evidences:
        if e.kind in DEPENDENCY_KINDS:
            used[e.source_class].add(e.target_class)
            users[e.target_class].add(e.source_class)
            out_total[e.source_class] += 1
            in_total[e.target_class] += 1

    view = graph.ccig()
    rows = []
    for name in sorted(graph.nodes):
        rows.append(
            ClassMetrics(
                class_name=name,
                nucd=len(used[name]),
                tnucd=out_total[name],
                nucc=len(users[name]),
                tnucc=in_total[name],
                class_coupling=len(view.out_neighbors(name)) + len(view.in_neighbors(name)),
                visible_members=visible_members(model, name) if name in model else 0,
            )
        )
    return MetricsTable(tuple(rows))
