"""Extract move lists from free-form solver output.

Model responses mix reasoning prose, code fences, and often several
candidate move lists; the final answer conventionally comes last, so the
LAST well-formed block wins.  A block is a bracketed list of bracketed
entries, with or without a ``moves =`` prefix:

    moves = [[1, 0, 2], [2, 0, 1]]
    [["A_1", "a_1"], ["A_1"]]

Tolerances (fixed): code fences are ignored; entries may use single quotes,
double quotes, or bare tokens (``[A_1, a_1]``); trailing commas are
accepted; whitespace and newlines are free.  Anything else is malformed.

The parser checks syntax only.  Disk numbers beyond N, unknown person
indices, and illegal moves are the validator's business, not ours.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .hanoi import HanoiMove
from .river import RiverMove, person_from_id

NO_BLOCK = "no_block"
MALFORMED = "malformed"


class ParseError(Exception):
    """No usable move block in the text.

    ``reason`` is NO_BLOCK when nothing resembling a move list was found
    (including explicitly empty lists), MALFORMED when candidate blocks
    existed but none parsed cleanly.
    """

    def __init__(self, reason: str, message: str) -> None:
        super().__init__(message)
        self.reason = reason


@dataclass
class ParseOutcome:
    moves: list
    span: tuple[int, int]
    diagnostics: list[str] = field(default_factory=list)


# An outer list of one or more [...] entries.  Entries cannot nest further
# and the separator is unambiguous, which keeps matching linear-time on
# arbitrary (including adversarial) input.
_BLOCK = re.compile(r"\[\s*(?:\[[^\[\]]*\]\s*(?:,\s*)?)+\]")
_ENTRY = re.compile(r"\[([^\[\]]*)\]")
_FENCE = re.compile(r"```[A-Za-z0-9_+-]*")
_PERSON_TOKEN = re.compile(r"^[Aa]_[0-9]+$")


def _strip_fences(text: str) -> str:
    # Replace fence markers with spaces of equal length so every span still
    # indexes into the original text.
    return _FENCE.sub(lambda m: " " * len(m.group()), text)


def _entry_tokens(entry: str) -> list[str]:
    tokens = [t.strip() for t in entry.split(",")]
    if tokens and tokens[-1] == "":  # trailing comma
        tokens = tokens[:-1]
    return [t.strip("'\"").strip() for t in tokens]


def _parse_hanoi_block(block: str) -> list[HanoiMove]:
    moves = []
    for entry in _ENTRY.finditer(block):
        tokens = _entry_tokens(entry.group(1))
        if len(tokens) != 3:
            raise ParseError(
                MALFORMED, f"move triple needs 3 fields, got {len(tokens)}: {entry.group()}"
            )
        try:
            disk, from_peg, to_peg = (int(t) for t in tokens)
        except ValueError:
            raise ParseError(MALFORMED, f"non-integer field in triple: {entry.group()}")
        moves.append(HanoiMove(disk=disk, from_peg=from_peg, to_peg=to_peg))
    return moves


def _parse_river_block(block: str) -> list[RiverMove]:
    moves = []
    for entry in _ENTRY.finditer(block):
        tokens = _entry_tokens(entry.group(1))
        if not tokens or tokens == [""]:
            raise ParseError(MALFORMED, f"empty traveler list: {entry.group()}")
        for token in tokens:
            if not _PERSON_TOKEN.match(token):
                raise ParseError(MALFORMED, f"not a person id: {token!r}")
        moves.append(RiverMove(person_from_id(t) for t in tokens))
    return moves


def _extract(text: str, parse_block) -> ParseOutcome:
    if not isinstance(text, str):
        raise ParseError(NO_BLOCK, "input is not text")
    cleaned = _strip_fences(text)
    parsed: list[tuple[list, tuple[int, int]]] = []
    diagnostics: list[str] = []
    malformed_reason: str | None = None
    for match in _BLOCK.finditer(cleaned):
        try:
            moves = parse_block(match.group())
        except ParseError as exc:
            malformed_reason = str(exc)
            diagnostics.append(f"skipped malformed block at {match.start()}: {exc}")
            continue
        parsed.append((moves, match.span()))
    if not parsed:
        if malformed_reason is not None:
            raise ParseError(MALFORMED, malformed_reason)
        raise ParseError(NO_BLOCK, "no move list found in the response")
    if len(parsed) > 1:
        diagnostics.append(
            f"{len(parsed)} candidate move blocks found; keeping the last"
        )
    moves, span = parsed[-1]
    return ParseOutcome(moves=moves, span=span, diagnostics=diagnostics)


def extract_hanoi_moves(text: str) -> ParseOutcome:
    """Last well-formed block of [disk, from_peg, to_peg] integer triples."""
    return _extract(text, _parse_hanoi_block)


def extract_river_moves(text: str) -> ParseOutcome:
    """Last well-formed block of person-id lists (``A_3`` / ``a_3`` tokens)."""
    return _extract(text, _parse_river_block)
