"""Exception hierarchy for sigma-rcm.

Invariant violations found by the validators are returned as data
(``ValidationIssue`` lists). The exceptions below are reserved for calls that
cannot proceed: unresolvable names, broken preconditions, resource limits.
"""

from __future__ import annotations

from typing import Any


class RCMError(Exception):
    """Base exception for sigma-rcm errors."""

    pass


class UnknownNameError(RCMError, LookupError):
    """A class, attribute, instance or variable name does not resolve."""

    pass


class PreconditionError(RCMError, ValueError):
    """An operation was called with arguments violating its precondition."""

    pass


class InfeasibleSizeError(RCMError, ValueError):
    """Requested skeleton sizes cannot satisfy the schema."""

    pass


class InvalidSkeletonError(RCMError, ValueError):
    """Skeleton does not satisfy the schema it is used with.

    Attributes:
        issues: Validation issues that made the skeleton unusable
    """

    def __init__(self, message: str, issues: list[Any] | None = None) -> None:
        super().__init__(message)
        self.issues = issues or []


class CyclicModelError(RCMError):
    """An acyclic construction was requested for a cyclic model."""

    pass


class ModeMismatchError(RCMError):
    """Separation mode is not supported by the graph it runs on."""

    pass


class StateLimitExceededError(RCMError):
    """An exhaustive search ran past its configured state cap.

    Attributes:
        limit: The cap that was exceeded
        partial: Optional partial result collected before the cap was hit
    """

    def __init__(self, limit: int, partial: Any | None = None) -> None:
        super().__init__(f"State limit of {limit} exceeded")
        self.limit = limit
        self.partial = partial


class ModelFileError(RCMError):
    """A model or skeleton file could not be read or parsed.

    Attributes:
        path: File that failed
        line: 1-based line of a syntax error, if known
        column: 1-based column of a syntax error, if known
        location: Dotted field path of a structural error, if known
    """

    def __init__(
        self,
        path: str,
        message: str,
        line: int | None = None,
        column: int | None = None,
        location: str | None = None,
    ) -> None:
        self.path = path
        self.line = line
        self.column = column
        self.location = location
        super().__init__(f"{self.position}: {message}")

    @property
    def position(self) -> str:
        """Human-readable position prefix ``path:line:column`` or ``path[field]``."""
        if self.line is not None:
            return f"{self.path}:{self.line}:{self.column or 0}"
        if self.location:
            return f"{self.path}[{self.location}]"
        return self.path
