"""Structured diagnostics shared by the validation routines.

Validators in this package never raise on bad *mathematical* data; they return
a (possibly empty) list of :class:`Diagnostic` records, one per violated rule,
so callers can report all problems at once.  Malformed *structural* data
(wrong types, unknown identifiers) still raises.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    """A single violated validation rule."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def codes(diagnostics: list[Diagnostic]) -> list[str]:
    return [d.code for d in diagnostics]
