"""Blockers, deletion and contraction on clutters and on lattices of antichains."""

from blockerlab.errors import BlockerLabError, LimitExceeded
from blockerlab.report import VerificationReport

__all__ = ["BlockerLabError", "LimitExceeded", "VerificationReport"]

__version__ = "0.1.0"
