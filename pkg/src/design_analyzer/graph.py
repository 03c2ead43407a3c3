"""Interaction graph over user-defined classes and its class-class subgraph."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .errors import GraphConsistencyError, UnknownClassError, ValidationError
from .interactions import CLASS_CLASS_KINDS, InteractionKind, InteractionSet
from .source_model import CodebaseModel


@dataclass(frozen=True, order=True)
class Edge:
    source: str
    target: str
    kind: InteractionKind
    evidence_count: int


@dataclass(frozen=True)
class InteractionGraph:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    _out: dict[str, frozenset[str]] = field(init=False, repr=False, compare=False)
    _in: dict[str, frozenset[str]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        out: dict[str, set[str]] = {n: set() for n in self.nodes}
        inn: dict[str, set[str]] = {n: set() for n in self.nodes}
        for e in self.edges:
            if e.source not in out or e.target not in inn:
                raise GraphConsistencyError(f"edge {e.source} -> {e.target} references an unknown class")
            if e.source == e.target:
                raise GraphConsistencyError(f"self-loop on {e.source}")
            out[e.source].add(e.target)
            inn[e.target].add(e.source)
        object.__setattr__(self, "_out", {k: frozenset(v) for k, v in out.items()})
        object.__setattr__(self, "_in", {k: frozenset(v) for k, v in inn.items()})

    def __contains__(self, name: object) -> bool:
        return name in self._out

    def out_neighbors(self, name: str) -> frozenset[str]:
        try:
            return self._out[name]
        except KeyError:
            raise UnknownClassError(name) from None

    def in_neighbors(self, name: str) -> frozenset[str]:
        try:
            return self._in[name]
        except KeyError:
            raise UnknownClassError(name) from None

    def ccig(self) -> "CcigView":
        return CcigView(self.nodes, tuple(e for e in self.edges if e.kind in CLASS_CLASS_KINDS))


class CcigView(InteractionGraph):
    """The graph restricted to object-declaration and inheritance edges."""

    def ccig(self) -> "CcigView":
        return self


def _make_graph(nodes: Iterable[str], counts: Counter) -> InteractionGraph:
    edges = tuple(
        sorted(
            (Edge(s, t, k, n) for (s, t, k), n in counts.items()),
            key=lambda e: (e.source, e.target, e.kind.order),
        )
    )
    return InteractionGraph(tuple(sorted(nodes)), edges)


def build_graph(model: CodebaseModel, evidences: InteractionSet) -> InteractionGraph:
    """Collapse evidences into one edge per (source, target, kind)."""
    nodes = {c.qualified_name for c in model.classes}
    counts: Counter = Counter()
    for ev in evidences:
        if ev.source_class not in nodes or ev.target_class not in nodes:
            raise GraphConsistencyError(
                f"evidence {ev.source_class} -> {ev.target_class} references a class outside the model"
            )
        counts[ev.source_class, ev.target_class, ev.kind] += 1
    return _make_graph(nodes, counts)


def client_coupling(graph: InteractionGraph, name: str) -> int:
    """Distinct classes this class depends on in the class-class subgraph."""
    return len(graph.ccig().out_neighbors(name))


def server_coupling(graph: InteractionGraph, name: str) -> int:
    return len(graph.ccig().in_neighbors(name))


def class_coupling(graph: InteractionGraph, name: str) -> int:
    view = graph.ccig()
    return len(view.out_neighbors(name)) + len(view.in_neighbors(name))


def add_virtual_module(
    graph: InteractionGraph,
    new_name: str,
    connect_to: Iterable[str],
    kind: InteractionKind = InteractionKind.OBJECT_DECLARATION,
) -> InteractionGraph:
    """Return a copy of ``graph`` with a new class depending on ``connect_to``."""
    targets = list(dict.fromkeys(connect_to))
    if new_name in graph:
        raise ValidationError(f"class {new_name!r} already exists")
    unknown = [t for t in targets if t not in graph]
    if unknown:
        raise ValidationError(f"unknown target class(es): {', '.join(unknown)}")
    counts: Counter = Counter({(e.source, e.target, e.kind): e.evidence_count for e in graph.edges})
    for t in targets:
        counts[new_name, t, kind] += 1
    return _make_graph((*graph.nodes, new_name), counts)
