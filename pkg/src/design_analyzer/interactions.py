"""Turn a parsed code base into interaction evidence between user-defined classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from .source_model import ClassModel, CodebaseModel


class Category(str, enum.Enum):
    OPERATION_OPERATION = "O-O"
    CLASS_CLASS = "C-C"
    DEPENDENCY_ONLY = "NUCD-only"


class InteractionKind(str, enum.Enum):
    RETURN_TYPE = "ReturnType"
    PARAMETER = "Parameter"
    OBJECT_DECLARATION = "ObjectDeclaration"
    LOCAL_VARIABLE = "LocalVariable"
    INHERITANCE = "Inheritance"

    @property
    def category(self) -> Category:
        return _CATEGORY[self]

    @property
    def order(self) -> int:
        return _ORDER[self]

    @classmethod
    def from_cli(cls, text: str) -> "InteractionKind":
        """Accept ``object-declaration`` style names as well as the enum values."""
        normalized = text.replace("-", "").replace("_", "").lower()
        for kind in cls:
            if kind.value.lower() == normalized:
                return kind
        raise ValueError(f"unknown interaction kind: {text!r}")


_CATEGORY = {
    InteractionKind.RETURN_TYPE: Category.OPERATION_OPERATION,
    InteractionKind.PARAMETER: Category.OPERATION_OPERATION,
    InteractionKind.OBJECT_DECLARATION: Category.CLASS_CLASS,
    InteractionKind.INHERITANCE: Category.CLASS_CLASS,
    InteractionKind.LOCAL_VARIABLE: Category.DEPENDENCY_ONLY,
}
_ORDER = {kind: i for i, kind in enumerate(InteractionKind)}

CLASS_CLASS_KINDS = frozenset(k for k in InteractionKind if k.category is Category.CLASS_CLASS)
DEPENDENCY_KINDS = frozenset(
    {InteractionKind.PARAMETER, InteractionKind.RETURN_TYPE, InteractionKind.LOCAL_VARIABLE}
)


@dataclass(frozen=True, order=True)
class Interaction:
    source_class: str  # the client / container
    target_class: str  # the supplier
    kind: InteractionKind
    file: str
    line: int
    via_member: str

    def sort_key(self) -> tuple:
        return (self.file, self.line, self.kind.order, self.source_class, self.target_class, self.via_member)

    def as_row(self) -> str:
        """One-line text form, used for oracle files and debugging."""
        return (
            f"{self.file}:{self.line} {self.source_class} -> {self.target_class} "
            f"{self.kind.value} via {self.via_member}"
        )


@dataclass(frozen=True)
class InteractionSet:
    evidences: tuple[Interaction, ...]
    classes: frozenset[str]

    def __iter__(self) -> Iterator[Interaction]:
        return iter(self.evidences)

    def __len__(self) -> int:
        return len(self.evidences)

    def count_by_kind(self) -> dict[str, int]:
        counts = {kind.value: 0 for kind in InteractionKind}
        for ev in self.evidences:
            counts[ev.kind.value] += 1
        return counts

    def with_extra(self, extra: Iterable[Interaction], new_classes: Iterable[str] = ()) -> "InteractionSet":
        merged = sorted((*self.evidences, *extra), key=Interaction.sort_key)
        return InteractionSet(tuple(merged), self.classes | frozenset(new_classes))


def _emit(
    model: CodebaseModel,
    cls: ClassModel,
    simple_names: Iterable[str],
    kind: InteractionKind,
    line: int,
    via: str,
) -> Iterator[Interaction]:
    for simple in simple_names:
        for target in model.resolve(simple):
            yield Interaction(cls.qualified_name, target, kind, cls.source_file, line, via)


def extract_return_type(model: CodebaseModel) -> list[Interaction]:
    out: list[Interaction] = []
    for cls in model.classes:
        for m in cls.methods:
            if not m.is_constructor:
                out.extend(
                    _emit(model, cls, m.return_type.resolved_simple_names,
                          InteractionKind.RETURN_TYPE, m.line, m.name)
                )
    return out


def extract_parameters(model: CodebaseModel) -> list[Interaction]:
    """One evidence per parameter position, constructors included."""
    out: list[Interaction] = []
    for cls in model.classes:
        for m in cls.methods:
            for p in m.params:
                out.extend(
                    _emit(model, cls, p.resolved_simple_names, InteractionKind.PARAMETER, m.line, m.name)
                )
    return out


def extract_object_declarations(model: CodebaseModel) -> list[Interaction]:
    out: list[Interaction] = []
    for cls in model.classes:
        for f in cls.fields:
            names = list(f.type.resolved_simple_names)
            # `A a = new SubA()` also depends on SubA
            if f.initializer_instantiates and f.initializer_instantiates not in names:
                names.append(f.initializer_instantiates)
            out.extend(_emit(model, cls, names, InteractionKind.OBJECT_DECLARATION, f.line, f.name))
    return out


def extract_local_variables(model: CodebaseModel) -> list[Interaction]:
    out: list[Interaction] = []
    for cls in model.classes:
        for m in cls.methods:
            for ev in m.body_type_evidence:
                out.extend(_emit(model, cls, (ev.name,), InteractionKind.LOCAL_VARIABLE, ev.line, m.name))
    return out


def extract_inheritance(model: CodebaseModel) -> list[Interaction]:
    """Subtype -> supertype edges for every user-defined extends/implements entry."""
    out: list[Interaction] = []
    for cls in model.classes:
        for clause, names in (("extends", cls.extends_names), ("implements", cls.implements_names)):
            out.extend(_emit(model, cls, names, InteractionKind.INHERITANCE, cls.line, clause))
    return out


EXTRACTORS = (
    extract_return_type,
    extract_parameters,
    extract_object_declarations,
    extract_local_variables,
    extract_inheritance,
)


def extract_all(model: CodebaseModel) -> InteractionSet:
    evidences = [
        ev
        for extractor in EXTRACTORS
        for ev in extractor(model)
        if ev.source_class != ev.target_class
    ]
    evidences.sort(key=Interaction.sort_key)
    return InteractionSet(tuple(evidences), frozenset(c.qualified_name for c in model.classes))
