"""Uniform facade over the two puzzle engines.

The orchestrator, the agents, and the CLI referee all speak one small
vocabulary: initial state, apply, goal test, legal moves, rendering, the
canonical JSON encodings, and a reference solution.  HanoiPuzzle and
RiverPuzzle bind that vocabulary to the respective engine so protocol code
never branches on puzzle type.
"""

from __future__ import annotations

import json

from . import hanoi, parsing, river, solvers
from .hanoi import HanoiConfig, HanoiMove
from .parsing import ParseOutcome
from .river import Person, RiverConfig, RiverMove, Role
from .solvers import Solution


class HanoiPuzzle:
    kind = "hanoi"

    def __init__(self, config: HanoiConfig) -> None:
        self.config = config

    def initial_state(self) -> hanoi.HanoiState:
        return hanoi.initial_state(self.config)

    def apply(self, state, move):
        return hanoi.apply_move(state, move)

    def is_goal(self, state) -> bool:
        return hanoi.is_goal(state, self.config)

    def legal_moves(self, state):
        return hanoi.legal_moves(state)

    def render_state(self, state) -> str:
        return hanoi.render_state(state)

    def state_to_json(self, state):
        return hanoi.state_to_json(state)

    def move_to_json(self, move):
        return hanoi.move_to_json(move)

    def move_from_json(self, data):
        return hanoi.move_from_json(data)

    def extract_moves(self, text: str) -> ParseOutcome:
        return parsing.extract_hanoi_moves(text)

    def reference_solution(self) -> Solution:
        return solvers.hanoi_optimal(self.config)

    def min_solution_length(self) -> int | None:
        return solvers.minimal_moves_hanoi(self.config.n_disks)

    def poison_move(self) -> HanoiMove:
        # Disk N+1 does not exist, so this move fails on any state while
        # still parsing as a perfectly ordinary triple.
        return HanoiMove(disk=self.config.n_disks + 1, from_peg=0, to_peg=1)

    def prompt_bindings(self) -> dict[str, object]:
        return {
            "n": self.config.n_disks,
            "source_peg": self.config.source_peg,
            "target_peg": self.config.target_peg,
        }


class RiverPuzzle:
    kind = "river"

    def __init__(self, config: RiverConfig) -> None:
        self.config = config

    def initial_state(self) -> river.RiverState:
        return river.initial_state(self.config)

    def apply(self, state, move):
        return river.apply_move(state, move, self.config)

    def is_goal(self, state) -> bool:
        return river.is_goal(state)

    def legal_moves(self, state):
        return river.legal_moves(state, self.config)

    def render_state(self, state) -> str:
        return river.render_state(state, self.config)

    def state_to_json(self, state):
        return river.state_to_json(state)

    def move_to_json(self, move):
        return river.move_to_json(move)

    def move_from_json(self, data):
        return river.move_from_json(data)

    def extract_moves(self, text: str) -> ParseOutcome:
        return parsing.extract_river_moves(text)

    def reference_solution(self) -> Solution:
        solution = solvers.reference_river_solution(self.config)
        if solution is None:
            raise ValueError(
                f"no reference solution for N={self.config.n_pairs},"
                f" k={self.config.boat_capacity} (unsolvable or beyond reach)"
            )
        return solution

    def min_solution_length(self) -> int | None:
        solution = solvers.reference_river_solution(self.config)
        return None if solution is None else solution.length

    def poison_move(self) -> RiverMove:
        # References a couple index beyond N: syntactically fine, never legal.
        return RiverMove([Person(self.config.n_pairs + 1, Role.AGENT)])

    def prompt_bindings(self) -> dict[str, object]:
        boat_rule = (
            " and on the boat"
            if self.config.safety_scope is river.SafetyScope.BANKS_AND_BOAT
            else ""
        )
        return {
            "n": self.config.n_pairs,
            "k": self.config.boat_capacity,
            "boat_rule": boat_rule,
        }


Puzzle = HanoiPuzzle | RiverPuzzle


def moves_to_text(puzzle: Puzzle, moves) -> str:
    """Canonical move-list rendering, the exact format the parser expects."""
    return "moves = " + json.dumps([puzzle.move_to_json(m) for m in moves])


def replay(puzzle: Puzzle, moves):
    """Fail-fast replay from the initial state.

    Returns (final_state, applied_count, first_error); first_error is None
    when every move applied cleanly.
    """
    state = puzzle.initial_state()
    applied = 0
    for move in moves:
        try:
            state = puzzle.apply(state, move)
        except Exception as exc:
            return state, applied, exc
        applied += 1
    return state, applied, None
