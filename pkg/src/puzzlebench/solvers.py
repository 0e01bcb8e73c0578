"""Ground-truth solvers and solvability analysis.

Four routes to truth, deliberately independent of each other:

* :func:`hanoi_optimal`: the classical recursion, exactly 2^N - 1 moves.
* :func:`river_solvable`: the closed-form predicate, solvable iff k >= 4,
  or 2 <= k <= 3 and N <= 2k - 1 (a one-seat boat solves nothing).
* :func:`river_bfs`: exhaustive shortest-path search for small instances;
  the independent cross-check for the closed form.
* :func:`river_constructive`: a couples-ferry certificate for k >= 4 that
  scales to arbitrary N (2N - 3 moves for N >= 2).  Valid, not necessarily
  minimal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Union

from . import river
from .hanoi import HanoiConfig, HanoiMove
from .river import Person, RiverConfig, RiverMove, Role

Move = Union[HanoiMove, RiverMove]

# river_bfs enumerates up to 2^(2N+1) states; past 2N = 14 that stops being
# a desk-scale search.
BFS_MAX_PERSONS = 14


class TooLargeError(ValueError):
    """River instance beyond the enumerable BFS bound."""


@dataclass(frozen=True)
class Solution:
    """An ordered move sequence; replaying it from the initial state must
    reach the goal without errors (solver tests enforce this)."""

    moves: tuple[Move, ...]

    @property
    def length(self) -> int:
        return len(self.moves)


class SolvabilityRule(Enum):
    CAPACITY_AT_LEAST_4 = "capacity_at_least_4"
    WITHIN_TWO_K_MINUS_ONE = "within_two_k_minus_one"
    UNSOLVABLE = "unsolvable"


@dataclass(frozen=True)
class SolvabilityVerdict:
    solvable: bool
    rule: SolvabilityRule
    reason: str


def hanoi_optimal(config: HanoiConfig) -> Solution:
    """Minimal solution via the standard recursion.

    Moves the top N-1 disks to the spare peg, disk N to the target, then the
    N-1 stack onto the target; 2^N - 1 moves total.
    """
    moves: list[HanoiMove] = []

    def solve(n: int, source: int, target: int, spare: int) -> None:
        if n == 0:
            return
        solve(n - 1, source, spare, target)
        moves.append(HanoiMove(disk=n, from_peg=source, to_peg=target))
        solve(n - 1, spare, target, source)

    solve(config.n_disks, config.source_peg, config.target_peg, config.spare_peg)
    return Solution(moves=tuple(moves))


def river_solvable(n_pairs: int, boat_capacity: int) -> SolvabilityVerdict:
    """Closed-form solvability: k >= 4, or 2 <= k <= 3 with N <= 2k - 1.

    A one-seat boat is a special case the bound misses: crossings alternate
    direction and each carries exactly one person, so the net transfer never
    exceeds one and no instance is solvable (exhaustive search agrees).
    """
    if n_pairs < 1 or boat_capacity < 1:
        raise ValueError("n_pairs and boat_capacity must be at least 1")
    if boat_capacity >= 4:
        return SolvabilityVerdict(
            True,
            SolvabilityRule.CAPACITY_AT_LEAST_4,
            "boat capacity k >= 4 admits every N",
        )
    if boat_capacity == 1:
        return SolvabilityVerdict(
            False,
            SolvabilityRule.UNSOLVABLE,
            "a one-seat boat cannot make net progress for any N",
        )
    if n_pairs <= 2 * boat_capacity - 1:
        return SolvabilityVerdict(
            True, SolvabilityRule.WITHIN_TWO_K_MINUS_ONE, "k <= 3 and N <= 2k - 1"
        )
    return SolvabilityVerdict(
        False, SolvabilityRule.UNSOLVABLE, "k <= 3 and N > 2k - 1"
    )


def river_bfs(config: RiverConfig) -> Solution | None:
    """Shortest solution by move count, or None after exhausting the
    reachable set.

    Ties break deterministically because successors are expanded in the
    canonical legal-move order.  Raises TooLargeError beyond 2N = 14 persons.
    """
    if 2 * config.n_pairs > BFS_MAX_PERSONS:
        raise TooLargeError(
            f"river BFS supports at most {BFS_MAX_PERSONS} persons,"
            f" got {2 * config.n_pairs}"
        )
    start = river.initial_state(config)
    if river.is_goal(start):
        return Solution(moves=())
    seen: dict[river.RiverState, tuple[river.RiverState, RiverMove] | None] = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for move in river.legal_moves(state, config):
            successor = river.apply_move(state, move, config)
            if successor in seen:
                continue
            seen[successor] = (state, move)
            if river.is_goal(successor):
                moves: list[RiverMove] = []
                cursor: river.RiverState | None = successor
                while seen[cursor] is not None:
                    cursor, move_taken = seen[cursor]  # type: ignore[misc]
                    moves.append(move_taken)
                moves.reverse()
                return Solution(moves=tuple(moves))
            queue.append(successor)
    return None


def river_constructive(config: RiverConfig) -> Solution:
    """Valid solution for k >= 4 moving only complete couples.

    Couple 1 ferries: it crosses with couple i, returns alone with its
    partner, and repeats, carrying couple N on the final trip.  No actor is
    ever separated from its agent, so safety holds at every step.  Length is
    1 for N <= 2 and 2N - 3 otherwise.
    """
    if config.boat_capacity < 4:
        raise ValueError("constructive solver requires boat_capacity >= 4")

    def couple(i: int) -> tuple[Person, Person]:
        return (Person(i, Role.AGENT), Person(i, Role.ACTOR))

    n = config.n_pairs
    if n == 1:
        return Solution(moves=(RiverMove(couple(1)),))
    moves: list[RiverMove] = []
    for i in range(2, n):
        moves.append(RiverMove(couple(1) + couple(i)))
        moves.append(RiverMove(couple(1)))
    moves.append(RiverMove(couple(1) + couple(n)))
    return Solution(moves=tuple(moves))


def chunk_solution(solution: Solution, p: int) -> list[tuple[Move, ...]]:
    """Split a solution into ceil(length / p) blocks of p moves (last may be
    shorter); concatenating the blocks restores the move sequence."""
    if p < 1:
        raise ValueError("chunk size p must be at least 1")
    return [solution.moves[i : i + p] for i in range(0, len(solution.moves), p)]


def minimal_moves_hanoi(n_disks: int) -> int:
    return 2**n_disks - 1


def reference_river_solution(config: RiverConfig) -> Solution | None:
    """Best available certificate: exact BFS when enumerable, else the
    constructive scheme for k >= 4, else None (unsolvable or out of reach)."""
    if 2 * config.n_pairs <= BFS_MAX_PERSONS:
        return river_bfs(config)
    if config.boat_capacity >= 4:
        return river_constructive(config)
    return None
