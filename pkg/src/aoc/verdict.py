"""Shared result and exception types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class AocError(Exception):
    """Base class for every error raised by the calculus modules."""


@dataclass(frozen=True)
class Verdict:
    """Accept/reject outcome of a check.

    ``violation`` names the rule that failed (``None`` on acceptance) and
    ``details`` carries whatever values justify the outcome.
    """

    accepted: bool
    violation: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.accepted

    @classmethod
    def accept(cls, **details: Any) -> Verdict:
        return cls(True, None, details)

    @classmethod
    def reject(cls, violation: str, **details: Any) -> Verdict:
        return cls(False, violation, details)
