"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One failed topology axiom, with the offending sets (as bit masks)."""

    kind: str
    witness: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.witness:
            return self.kind
        return f"{self.kind}({', '.join(map(str, self.witness))})"


class GammaTopError(Exception):
    """Base class for every error raised by gammatop."""


class TopologyError(GammaTopError, ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("invalid topology: " + "; ".join(str(v) for v in self.violations))


class PointOutOfRange(GammaTopError, ValueError):
    pass


class OperationError(GammaTopError, ValueError):
    pass


class IncompleteOperationTable(OperationError):
    pass


class EmptySubspace(GammaTopError, ValueError):
    pass


class CapExceeded(GammaTopError):
    pass


class UnknownReference(GammaTopError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown reference"


class ParseError(GammaTopError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
