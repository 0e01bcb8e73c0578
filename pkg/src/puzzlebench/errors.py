"""Shared exception types for the puzzle engines."""

from __future__ import annotations

# Reason codes carried by MoveError.  The orchestrator and the CLI referee
# report these verbatim, so they are part of the trial-log vocabulary.
EMPTY_SOURCE = "empty_source"
WRONG_DISK = "wrong_disk"
SIZE_VIOLATION = "size_violation"
BAD_PEG = "bad_peg"
OVERLOADED = "overloaded"
EMPTY_BOAT = "empty_boat"
WRONG_SIDE = "wrong_side"
SAFETY_VIOLATION = "safety_violation"


class MoveError(Exception):
    """A move that cannot be applied to the current state.

    ``reason`` is one of the module-level reason codes; the exception
    message is a human-readable explanation.
    """

    def __init__(self, reason: str, message: str) -> None:
        super().__init__(message)
        self.reason = reason
