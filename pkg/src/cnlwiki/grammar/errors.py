"""Errors shared across the grammar kernel."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    """One compile problem, tied to a module and line."""

    module: str
    line: int
    message: str

    def __str__(self) -> str:
        return f"{self.module}:{self.line}: {self.message}"


class GrammarError(Exception):
    """Grammar source could not be compiled.

    Carries the full list of diagnostics collected before giving up.
    """

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


class LinearizationError(Exception):
    """A tree cannot be linearized (unknown or untranslated function)."""

    def __init__(self, function: str, message: str):
        self.function = function
        super().__init__(message)
