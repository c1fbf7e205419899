"""Exception hierarchy for kanrew.

Every error carries a ``detail`` message and an ``exit_code`` used by the CLI.
"""

from __future__ import annotations


class KanrewError(Exception):
    """Base class for all kanrew errors."""

    exit_code: int = 1

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class DocumentSyntaxError(KanrewError):
    """Malformed document text or term literal."""

    exit_code = 3

    def __init__(self, detail: str, line: int | None = None, column: int | None = None) -> None:
        if line is not None:
            detail = f"{detail} (line {line}, column {column})"
        super().__init__(detail)
        self.line = line
        self.column = column


class PresentationError(KanrewError):
    """A presentation invariant does not hold."""

    exit_code = 4

    def __init__(self, invariant: str, identifier: str, detail: str | None = None) -> None:
        message = f"{invariant}: {identifier!r}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
        self.invariant = invariant
        self.identifier = identifier


class CompositionError(KanrewError):
    """Two paths, or a term and a path, do not compose."""

    exit_code = 4


class DomainError(KanrewError):
    """An element is outside the domain of an action, or is not declared."""

    exit_code = 4


class OrderingError(KanrewError):
    """Values of different kinds were handed to the ordering."""


class ReductionLimitError(KanrewError):
    """Reduction did not reach a normal form within the step limit.

    Rules oriented by a well-ordering always terminate, so this points at a
    mis-oriented rule set rather than at bad input.
    """
