"""Exception hierarchy shared by every module."""

from __future__ import annotations


class AlmostFisherError(Exception):
    """Base class for all errors raised by this package."""


class FamilyError(AlmostFisherError, ValueError):
    """A set family violates its invariants (range, duplicates)."""

    def __init__(self, message: str, indices: tuple[int, ...] = ()) -> None:
        super().__init__(message)
        self.indices = indices


class ParameterError(AlmostFisherError, ValueError):
    """An operation was called outside its documented preconditions."""


class HypothesisViolation(ParameterError):
    """The input does not satisfy the hypothesis of the lemma being checked."""


class StructureError(AlmostFisherError):
    """A structural decomposition that should exist could not be found."""


class FormatError(AlmostFisherError, ValueError):
    """A document or matrix file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.column = column


class BudgetExhausted(AlmostFisherError):
    """A bounded search ran out of nodes; ``partial`` holds what was found."""

    def __init__(self, message: str, partial=None) -> None:
        super().__init__(message)
        self.partial = partial
