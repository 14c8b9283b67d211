"""Exception types shared across the package."""

from __future__ import annotations


class ExpertTeamsError(Exception):
    """Base class for all package errors."""


class LoadError(ExpertTeamsError):
    """A node, edge or corpus input violates the documented file contract.

    ``reason`` is a stable machine-readable tag (e.g. ``"negative edge weight"``),
    the message carries the human context (line numbers, offending values).
    """

    def __init__(self, reason: str, message: str | None = None):
        self.reason = reason
        super().__init__(message or reason)


class UnknownSkillError(ExpertTeamsError):
    """A project references a skill absent from the network's skill universe."""

    def __init__(self, skills):
        self.skills = sorted(skills)
        super().__init__("unknown skill(s): " + ", ".join(self.skills))


class InfeasibleProjectError(ExpertTeamsError):
    """No connected team covering the project exists (from any root)."""


class UnreachableError(ExpertTeamsError):
    """Path reconstruction was asked for a pair with no finite distance."""


class BudgetExceededError(ExpertTeamsError):
    """The exhaustive oracle refused an instance larger than its budget."""
