#!/usr/bin/env python3
"""
Exception hierarchy for the precedent library.

Every error raised on purpose by the library derives from PrecedentError so the
tool layer can map it to an exit code without catching unrelated failures.
"""
from typing import Iterable, List


class PrecedentError(Exception):
    """Base class for all library errors."""


class CaseBaseValidationError(PrecedentError, ValueError):
    """A case-base description broke one or more invariants."""

    def __init__(self, violations: Iterable[str]):
        self.violations: List[str] = list(violations)
        count = len(self.violations)
        summary = "; ".join(self.violations[:3])
        if count > 3:
            summary += f"; ... ({count - 3} more)"
        super().__init__(
            f"{count} violation{'s' if count != 1 else ''}: {summary}"
        )


class UnknownFactorError(PrecedentError, ValueError):
    """A factor name is not declared in the universe."""

    def __init__(self, names: Iterable[str]):
        self.names = sorted(set(names))
        super().__init__(f"unknown factor: {', '.join(self.names)}")


class UnknownCaseError(PrecedentError, KeyError):
    """A case id is not part of the case base."""

    def __init__(self, case_ids: Iterable[str]):
        self.case_ids = sorted(set(case_ids))
        super().__init__(f"unknown case id: {', '.join(self.case_ids)}")

    def __str__(self) -> str:
        return self.args[0]


class UnknownArgumentError(PrecedentError, KeyError):
    """An argument (or argument id) is not part of the framework."""

    def __init__(self, argument: object):
        self.argument = argument
        super().__init__(f"argument not in framework: {argument}")

    def __str__(self) -> str:
        return self.args[0]


class CapExceededError(PrecedentError):
    """An exponential enumeration would exceed its configured cap."""

    def __init__(self, cap_name: str, cap: int, size: int):
        self.cap_name = cap_name
        self.cap = cap
        self.size = size
        super().__init__(
            f"{cap_name} cap exceeded: {size} > {cap}"
        )


class InternalConsistencyError(PrecedentError, RuntimeError):
    """Two independent computations disagreed; this is an implementation bug."""
