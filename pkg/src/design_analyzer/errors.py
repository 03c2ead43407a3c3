"""Exception hierarchy and the diagnostic record shared by every stage."""

from __future__ import annotations

from dataclasses import dataclass

GLOBAL = "global"


@dataclass(frozen=True, order=True)
class Diagnostic:
    severity: str  # "error" | "warning" | "info"
    file: str  # source path, or GLOBAL when no location applies
    line: int  # 0 when file is GLOBAL
    message: str

    def __str__(self) -> str:
        where = self.file if self.file == GLOBAL else f"{self.file}:{self.line}"
        return f"{self.severity}: {where}: {self.message}"


class AnalyzerError(Exception):
    """Base class for all errors raised by design_analyzer."""


class LexicalError(AnalyzerError):
    def __init__(self, message: str, line: int, file: str | None = None):
        self.line = line
        self.file = file
        where = f"{file}:{line}" if file else f"line {line}"
        super().__init__(f"{where}: {message}")


class ParseError(AnalyzerError):
    def __init__(self, message: str, file: str, line: int):
        self.file = file
        self.line = line
        super().__init__(f"{file}:{line}: {message}")


class EmptyCodebaseError(AnalyzerError):
    pass


class UnknownClassError(AnalyzerError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown class: {name!r}")

    def __str__(self) -> str:  # KeyError would repr() the message
        return self.args[0]


class GraphConsistencyError(AnalyzerError):
    """An evidence names a class the graph does not know; indicates an upstream bug."""


class ValidationError(AnalyzerError, ValueError):
    pass


class DimensionError(AnalyzerError, ValueError):
    pass


class NumericError(AnalyzerError, ArithmeticError):
    pass


class DegenerateDataError(AnalyzerError, ValueError):
    """PCA input carries no variance (or too few observations) to analyze."""


class InsufficientDataError(DegenerateDataError):
    pass
