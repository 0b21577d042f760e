"""Exceptions shared across the package."""

from __future__ import annotations

__all__ = ["ContradictionError", "ResourceGuardError"]


class ContradictionError(RuntimeError):
    """A forced measurement outcome contradicts a deterministic one."""


class ResourceGuardError(RuntimeError):
    """An operation was refused because its input exceeds a size guard."""
