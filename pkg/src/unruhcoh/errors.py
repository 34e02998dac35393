"""Shared exception types."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class AccuracyError(RuntimeError):
    """A numerical routine could not reach its accuracy target.

    Attributes
    ----------
    achieved : float
        Best relative tolerance actually reached before giving up.
    """

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved relative tolerance {achieved:.3e})")
        self.achieved = achieved
