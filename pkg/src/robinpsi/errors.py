"""Shared exception types for sieve coverage and scan budgets."""

from __future__ import annotations


class CoverageError(Exception):
    """A prime table or sieve is too small for the request; the message says how far to extend."""


class ResourceError(Exception):
    """The requested scan exceeds the configured work or memory budget."""
