from __future__ import annotations


class BlockerLabError(ValueError):
    """Raised for any invalid input to a blockerlab construction or operation."""


class LimitExceeded(BlockerLabError):
    """Raised when an enumeration or construction would exceed a configured cap."""
