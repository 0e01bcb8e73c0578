"""River Crossing (jealous-husbands family) state machine.

N agent-actor pairs cross from the left bank to the right bank in a boat
holding at most k people.  The safety rule: an actor may never share a
location with another pair's agent unless its own agent is also present.
Whether the boat's occupants count as a "location" mid-crossing is
configurable via :class:`SafetyScope`; the stricter BANKS_AND_BOAT is the
default.

Person identifiers follow the paired naming scheme: agent ``A_i``, actor
``a_i``.  The boat cannot cross empty and anyone aboard can row.

As with the Hanoi engine, states are immutable and moves are validated by
:func:`apply_move`, not at construction.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from . import errors
from .errors import MoveError


class Role(Enum):
    AGENT = "A"
    ACTOR = "a"


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class SafetyScope(Enum):
    BANKS_ONLY = "banks_only"
    BANKS_AND_BOAT = "banks_and_boat"


@dataclass(frozen=True)
class Person:
    """One member of couple ``couple``: the agent A_i or the actor a_i."""

    couple: int
    role: Role

    @property
    def id(self) -> str:
        return f"{self.role.value}_{self.couple}"

    def sort_key(self) -> tuple[int, int]:
        return (self.couple, 0 if self.role is Role.AGENT else 1)


_PERSON_ID = re.compile(r"^([Aa])_([0-9]+)$")


def person_from_id(text: str) -> Person:
    """Parse ``A_3`` / ``a_3`` style identifiers (case-sensitive role letter)."""
    match = _PERSON_ID.match(text)
    if not match:
        raise ValueError(f"not a person id: {text!r}")
    role = Role.AGENT if match.group(1) == "A" else Role.ACTOR
    return Person(couple=int(match.group(2)), role=role)


@dataclass(frozen=True)
class RiverConfig:
    n_pairs: int
    boat_capacity: int
    safety_scope: SafetyScope = SafetyScope.BANKS_AND_BOAT

    def __post_init__(self) -> None:
        if self.n_pairs < 1:
            raise ValueError("n_pairs must be at least 1")
        if self.boat_capacity < 1:
            raise ValueError("boat_capacity must be at least 1")

    @functools.cached_property
    def persons(self) -> frozenset[Person]:
        return frozenset(
            Person(couple, role)
            for couple in range(1, self.n_pairs + 1)
            for role in (Role.AGENT, Role.ACTOR)
        )


@dataclass(frozen=True)
class RiverMove:
    """A boat trip carrying ``travelers`` to the opposite bank."""

    travelers: frozenset[Person]

    def __init__(self, travelers: Iterable[Person]) -> None:
        object.__setattr__(self, "travelers", frozenset(travelers))


@dataclass(frozen=True)
class RiverState:
    """Who is on the left bank, plus the boat's side.

    The right bank is always the complement of ``left_bank`` relative to the
    config's person set, so it is derived rather than stored.
    """

    left_bank: frozenset[Person]
    boat_side: Side = Side.LEFT

    def __init__(self, left_bank: Iterable[Person], boat_side: Side = Side.LEFT) -> None:
        object.__setattr__(self, "left_bank", frozenset(left_bank))
        object.__setattr__(self, "boat_side", boat_side)

    def right_bank(self, config: RiverConfig) -> frozenset[Person]:
        return config.persons - self.left_bank

    def bank(self, side: Side, config: RiverConfig) -> frozenset[Person]:
        return self.left_bank if side is Side.LEFT else self.right_bank(config)


def initial_state(config: RiverConfig) -> RiverState:
    """Everyone on the left bank, boat on the left."""
    return RiverState(left_bank=config.persons, boat_side=Side.LEFT)


def is_goal(state: RiverState) -> bool:
    """True once the left bank is empty."""
    return not state.left_bank


def is_safe(grouping: Iterable[Person]) -> bool:
    """Safety predicate for one location.

    A grouping is safe iff every actor in it either has its own agent present
    or is not in the company of any other pair's agent.
    """
    group = set(grouping)
    agent_couples = {p.couple for p in group if p.role is Role.AGENT}
    if not agent_couples:
        return True
    for person in group:
        if person.role is Role.ACTOR and person.couple not in agent_couples:
            if agent_couples - {person.couple}:
                return False
    return True


def apply_move(state: RiverState, move: RiverMove, config: RiverConfig) -> RiverState:
    """Carry ``move.travelers`` across, flipping the boat's side.

    Raises MoveError with reason ``empty_boat``, ``overloaded``, ``wrong_side``
    or ``safety_violation``.  Safety is checked on both resulting banks, and
    on the boat's traveler set when the config's scope is BANKS_AND_BOAT.
    """
    travelers = move.travelers
    if not travelers:
        raise MoveError(errors.EMPTY_BOAT, "the boat cannot cross empty")
    if len(travelers) > config.boat_capacity:
        raise MoveError(
            errors.OVERLOADED,
            f"{len(travelers)} travelers exceed boat capacity {config.boat_capacity}",
        )
    departure = state.bank(state.boat_side, config)
    missing = travelers - departure
    if missing:
        names = ", ".join(sorted(p.id for p in missing))
        raise MoveError(
            errors.WRONG_SIDE,
            f"{names} not on the {state.boat_side.value} bank with the boat"
            " (absent or unknown)",
        )
    if config.safety_scope is SafetyScope.BANKS_AND_BOAT and not is_safe(travelers):
        raise MoveError(
            errors.SAFETY_VIOLATION,
            "an actor shares the boat with a foreign agent while its own"
            " agent is absent",
        )
    if state.boat_side is Side.LEFT:
        new_left = state.left_bank - travelers
    else:
        new_left = state.left_bank | travelers
    new_state = RiverState(left_bank=new_left, boat_side=state.boat_side.other)
    for side in (Side.LEFT, Side.RIGHT):
        if not is_safe(new_state.bank(side, config)):
            raise MoveError(
                errors.SAFETY_VIOLATION,
                f"the {side.value} bank would leave an actor with a foreign"
                " agent and without its own",
            )
    return new_state


def legal_moves(state: RiverState, config: RiverConfig) -> list[RiverMove]:
    """All applicable boat loads, smallest parties first, then lexicographic.

    Travelers are drawn from the boat's current side; a candidate is legal
    exactly when :func:`apply_move` accepts it.
    """
    candidates = sorted(state.bank(state.boat_side, config), key=Person.sort_key)
    moves: list[RiverMove] = []
    for size in range(1, min(config.boat_capacity, len(candidates)) + 1):
        for combo in itertools.combinations(candidates, size):
            move = RiverMove(combo)
            try:
                apply_move(state, move, config)
            except MoveError:
                continue
            moves.append(move)
    return moves


def render_state(state: RiverState, config: RiverConfig) -> str:
    """Stable text rendering: both bank rosters plus the boat's side."""

    def roster(people: frozenset[Person]) -> str:
        if not people:
            return "(empty)"
        return " ".join(p.id for p in sorted(people, key=Person.sort_key))

    return "\n".join(
        [
            f"Left: {roster(state.left_bank)}",
            f"Right: {roster(state.right_bank(config))}",
            f"Boat: {state.boat_side.value}",
        ]
    )


# Canonical JSON encodings: a state is {"left": [ids], "boat": "left"|"right"},
# a move is an array of person-id strings.


def state_to_json(state: RiverState) -> dict:
    return {
        "left": [p.id for p in sorted(state.left_bank, key=Person.sort_key)],
        "boat": state.boat_side.value,
    }


def state_from_json(data: object) -> RiverState:
    if not isinstance(data, dict) or set(data) != {"left", "boat"}:
        raise ValueError('River state encoding must be {"left": [...], "boat": ...}')
    if data["boat"] not in (Side.LEFT.value, Side.RIGHT.value):
        raise ValueError(f"boat side must be 'left' or 'right', got {data['boat']!r}")
    left = [person_from_id(p) for p in data["left"]]
    return RiverState(left_bank=left, boat_side=Side(data["boat"]))


def move_to_json(move: RiverMove) -> list[str]:
    return [p.id for p in sorted(move.travelers, key=Person.sort_key)]


def move_from_json(data: object) -> RiverMove:
    if not isinstance(data, list) or not all(isinstance(p, str) for p in data):
        raise ValueError(f"River move encoding must be an array of person ids, got {data!r}")
    return RiverMove(person_from_id(p) for p in data)
