"""Towers of Hanoi state machine: exact rules, legality, rendering, encoding.

Disks are numbered 1 (smallest) to N (largest); pegs are indexed 0, 1, 2.
Each peg is a stack listed bottom to top, so a legal peg reads as a strictly
decreasing sequence of disk ids.  All values here are immutable: applying a
move returns a new state and never touches its input, which lets the
orchestrator snapshot and replay freely.

Moves are *not* validated at construction.  Solver agents produce arbitrary
triples, and rejecting them is the job of :func:`apply_move`, which raises
:class:`~puzzlebench.errors.MoveError` with a reason code.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import errors
from .errors import MoveError

Peg = tuple[int, ...]

_PEGS = (0, 1, 2)


@dataclass(frozen=True)
class HanoiConfig:
    """Puzzle instance: ``n_disks`` disks moved from ``source_peg`` to ``target_peg``."""

    n_disks: int
    source_peg: int = 0
    target_peg: int = 2

    def __post_init__(self) -> None:
        if self.n_disks < 1:
            raise ValueError("n_disks must be at least 1")
        for peg in (self.source_peg, self.target_peg):
            if peg not in _PEGS:
                raise ValueError(f"peg index {peg} must be 0, 1, or 2")
        if self.source_peg == self.target_peg:
            raise ValueError("source_peg and target_peg must differ")

    @property
    def spare_peg(self) -> int:
        return 3 - self.source_peg - self.target_peg


@dataclass(frozen=True)
class HanoiMove:
    """Relocate ``disk`` from the top of ``from_peg`` to the top of ``to_peg``."""

    disk: int
    from_peg: int
    to_peg: int


@dataclass(frozen=True)
class HanoiState:
    """Three peg stacks, each bottom to top.

    Construction enforces the structural invariants: the disk ids across all
    pegs form exactly {1..N}, and every peg is strictly decreasing bottom to
    top.  States that violate either are impossible to represent.
    """

    pegs: tuple[Peg, Peg, Peg]

    def __post_init__(self) -> None:
        if len(self.pegs) != 3:
            raise ValueError("a Hanoi state has exactly three pegs")
        disks = sorted(d for peg in self.pegs for d in peg)
        if disks != list(range(1, len(disks) + 1)):
            raise ValueError("disk ids must form 1..N with no repeats")
        for peg in self.pegs:
            for below, above in zip(peg, peg[1:]):
                if below <= above:
                    raise ValueError(
                        f"disk {above} may not rest on smaller disk {below}"
                    )

    @property
    def n_disks(self) -> int:
        return sum(len(peg) for peg in self.pegs)


def initial_state(config: HanoiConfig) -> HanoiState:
    """All N disks stacked on the source peg, largest at the bottom."""
    pegs: list[Peg] = [(), (), ()]
    pegs[config.source_peg] = tuple(range(config.n_disks, 0, -1))
    return HanoiState(pegs=(pegs[0], pegs[1], pegs[2]))


def apply_move(state: HanoiState, move: HanoiMove) -> HanoiState:
    """Apply one move, returning the successor state.

    Raises MoveError with reason ``bad_peg``, ``empty_source``, ``wrong_disk``
    or ``size_violation`` when the move is illegal.  The input state is never
    modified.
    """
    if move.from_peg not in _PEGS or move.to_peg not in _PEGS:
        raise MoveError(
            errors.BAD_PEG,
            f"peg indices must be 0, 1, or 2 (got {move.from_peg} -> {move.to_peg})",
        )
    if move.from_peg == move.to_peg:
        raise MoveError(
            errors.BAD_PEG, f"source and destination pegs are both {move.from_peg}"
        )
    source = state.pegs[move.from_peg]
    if not source:
        raise MoveError(errors.EMPTY_SOURCE, f"peg {move.from_peg} is empty")
    if source[-1] != move.disk:
        raise MoveError(
            errors.WRONG_DISK,
            f"disk {move.disk} is not on top of peg {move.from_peg}"
            f" (top is disk {source[-1]})",
        )
    destination = state.pegs[move.to_peg]
    if destination and destination[-1] < move.disk:
        raise MoveError(
            errors.SIZE_VIOLATION,
            f"cannot place disk {move.disk} on smaller disk {destination[-1]}",
        )
    pegs = list(state.pegs)
    pegs[move.from_peg] = source[:-1]
    pegs[move.to_peg] = destination + (move.disk,)
    return HanoiState(pegs=(pegs[0], pegs[1], pegs[2]))


def is_goal(state: HanoiState, config: HanoiConfig) -> bool:
    """True iff every disk sits on the target peg."""
    return len(state.pegs[config.target_peg]) == state.n_disks


def legal_moves(state: HanoiState) -> list[HanoiMove]:
    """All moves applicable in ``state``, ordered by (from_peg, to_peg)."""
    moves: list[HanoiMove] = []
    for from_peg in _PEGS:
        source = state.pegs[from_peg]
        if not source:
            continue
        top = source[-1]
        for to_peg in _PEGS:
            if to_peg == from_peg:
                continue
            destination = state.pegs[to_peg]
            if not destination or destination[-1] > top:
                moves.append(HanoiMove(top, from_peg, to_peg))
    return moves


def render_state(state: HanoiState) -> str:
    """Stable text rendering, one peg per line, bottom to top."""
    return "\n".join(
        f"Peg {index}: [{', '.join(str(d) for d in peg)}]"
        for index, peg in enumerate(state.pegs)
    )


# Canonical JSON encodings: a state is three arrays of ints, a move is a
# [disk, from_peg, to_peg] triple.  These are the wire format for trial logs.


def state_to_json(state: HanoiState) -> list[list[int]]:
    return [list(peg) for peg in state.pegs]


def state_from_json(data: object) -> HanoiState:
    if not isinstance(data, list) or len(data) != 3:
        raise ValueError("Hanoi state encoding must be a list of three peg arrays")
    pegs = []
    for peg in data:
        if not isinstance(peg, list) or not all(isinstance(d, int) for d in peg):
            raise ValueError("each peg must be an array of ints")
        pegs.append(tuple(peg))
    return HanoiState(pegs=(pegs[0], pegs[1], pegs[2]))


def move_to_json(move: HanoiMove) -> list[int]:
    return [move.disk, move.from_peg, move.to_peg]


def move_from_json(data: object) -> HanoiMove:
    if (
        not isinstance(data, list)
        or len(data) != 3
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in data)
    ):
        raise ValueError(f"Hanoi move encoding must be [disk, from, to], got {data!r}")
    return HanoiMove(disk=data[0], from_peg=data[1], to_peg=data[2])
