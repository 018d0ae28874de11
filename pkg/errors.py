#!/usr/bin/env python3

"""
Exception hierarchy for lucaswalk.

Every error raised by the library derives from LucasWalkError so callers
(the CLI and the MCP server) can map them to exit codes and messages.
"""

from typing import Any, List, Optional


class LucasWalkError(Exception):
    """Base class for all lucaswalk errors."""


class DomainError(LucasWalkError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterError(DomainError):
    """A SequenceParams or WalkConfig invariant is violated."""

    def __init__(self, message: str, invariant: str):
        super().__init__(message)
        self.invariant = invariant


class ResourceLimitError(LucasWalkError):
    """An index exceeds the configured ceiling."""

    def __init__(self, index: int, ceiling: int):
        super().__init__(f"index {index} exceeds the configured maximum {ceiling}")
        self.index = index
        self.ceiling = ceiling


class MembershipError(LucasWalkError):
    """A value that must belong to the carrier sequence does not."""

    def __init__(self, value: int, nearest: List[int]):
        shown = ", ".join(str(v) for v in nearest) or "none"
        super().__init__(f"{value} is not a sequence member (nearest members: {shown})")
        self.value = value
        self.nearest = nearest


class CertificationError(LucasWalkError):
    """A termination certificate check failed."""

    def __init__(self, condition: str, witness: Optional[Any] = None):
        message = f"certification failed: {condition}"
        if witness is not None:
            message += f" (witness: {witness})"
        super().__init__(message)
        self.condition = condition
        self.witness = witness
