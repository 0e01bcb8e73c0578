"""Solver agents: one ``respond`` contract, many implementations.

Scripted agents (oracle, saboteur, random-legal, replay, prose) exercise the
whole pipeline offline.  They are constructed fresh for every trial, so a
plain internal cursor or RNG is safe; the orchestrator never shares an agent
instance across concurrent trials.  Token usage for scripted agents is a
whitespace word count, flagged synthetic in ``provider_meta``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .puzzles import Puzzle, moves_to_text
from .solvers import chunk_solution


class AgentExhausted(Exception):
    """A scripted agent was asked for more turns than it holds."""


@dataclass(frozen=True)
class TokenUsage:
    prompt_tokens: int = 0
    completion_tokens: int = 0
    total_tokens: int = 0

    def __post_init__(self) -> None:
        for name in ("prompt_tokens", "completion_tokens", "total_tokens"):
            value = getattr(self, name)
            if value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")

    def __add__(self, other: "TokenUsage") -> "TokenUsage":
        return TokenUsage(
            self.prompt_tokens + other.prompt_tokens,
            self.completion_tokens + other.completion_tokens,
            self.total_tokens + other.total_tokens,
        )

    @classmethod
    def from_parts(cls, prompt_tokens: int, completion_tokens: int) -> "TokenUsage":
        return cls(prompt_tokens, completion_tokens, prompt_tokens + completion_tokens)

    def to_json(self) -> dict[str, int]:
        return {
            "prompt_tokens": self.prompt_tokens,
            "completion_tokens": self.completion_tokens,
            "total_tokens": self.total_tokens,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TokenUsage":
        return cls(
            int(data.get("prompt_tokens", 0)),
            int(data.get("completion_tokens", 0)),
            int(data.get("total_tokens", 0)),
        )


@dataclass(frozen=True)
class Exchange:
    """One prior prompt/response pair in a dialogue transcript."""

    prompt: str
    response: str


@dataclass(frozen=True)
class AgentContext:
    """Everything an agent may look at when producing one response.

    ``turn_index`` counts requests across the whole trial (0-based); in the
    two-agent protocol it is global, not per-seat, so alternating agents see
    0, 2, 4, ... and 1, 3, 5, ... respectively.
    """

    system_text: str
    user_text: str
    transcript: tuple[Exchange, ...] = ()
    turn_index: int = 0


@dataclass(frozen=True)
class AgentResponse:
    text: str
    usage: TokenUsage
    latency: float = 0.0
    provider_meta: dict = field(default_factory=dict)


def synthetic_usage(prompt_text: str, response_text: str) -> TokenUsage:
    """Whitespace word counts standing in for provider token counts."""
    return TokenUsage.from_parts(len(prompt_text.split()), len(response_text.split()))


class Agent:
    """Base contract: one completion per call, no harness state inside."""

    name = "agent"

    def respond(self, context: AgentContext) -> AgentResponse:
        raise NotImplementedError

    def _scripted(self, context: AgentContext, text: str) -> AgentResponse:
        usage = synthetic_usage(context.system_text + " " + context.user_text, text)
        return AgentResponse(text=text, usage=usage, provider_meta={"synthetic_usage": True})


class OracleAgent(Agent):
    """Emits the precomputed reference solution, split into p-move chunks.

    With ``chunk_size=None`` the whole solution goes out in one response
    (single-shot protocol).
    """

    name = "oracle"

    def __init__(self, puzzle: Puzzle, chunk_size: int | None = None) -> None:
        self._puzzle = puzzle
        solution = puzzle.reference_solution()
        if chunk_size is None:
            self._chunks = [list(solution.moves)]
        else:
            self._chunks = chunk_solution(solution, chunk_size)

    def respond(self, context: AgentContext) -> AgentResponse:
        if context.turn_index >= len(self._chunks):
            raise AgentExhausted(
                f"oracle has {len(self._chunks)} chunks, asked for turn {context.turn_index}"
            )
        text = moves_to_text(self._puzzle, self._chunks[context.turn_index])
        return self._scripted(context, text)


class SaboteurAgent(Agent):
    """Plays the oracle line until turn ``fail_at``, then slips in an illegal move.

    The poisoned block carries ``prefix`` legal moves first, so the failure
    lands at a controlled index inside the block.  The poison move itself
    parses cleanly but can never be applied.
    """

    name = "saboteur"

    def __init__(
        self,
        puzzle: Puzzle,
        chunk_size: int | None = None,
        fail_at: int = 1,
        prefix: int = 0,
    ) -> None:
        if fail_at < 1:
            raise ValueError(f"fail_at must be >= 1, got {fail_at}")
        if prefix < 0:
            raise ValueError(f"prefix must be >= 0, got {prefix}")
        if chunk_size is None and fail_at != 1:
            raise ValueError("single-shot saboteur must have fail_at=1")
        if chunk_size is not None and prefix >= chunk_size:
            # The validator applies at most chunk_size moves per block, so a
            # longer prefix would push the poison move past the cut.
            raise ValueError(f"prefix {prefix} must be < chunk_size {chunk_size}")
        self._puzzle = puzzle
        self._solution = list(puzzle.reference_solution().moves)
        self._chunk_size = chunk_size
        self._fail_at = fail_at
        self._prefix = prefix

    def respond(self, context: AgentContext) -> AgentResponse:
        turn = context.turn_index + 1
        if self._chunk_size is None:
            block = self._solution[: self._prefix] + [self._puzzle.poison_move()]
        elif turn < self._fail_at:
            start = (turn - 1) * self._chunk_size
            block = self._solution[start : start + self._chunk_size]
        else:
            start = (self._fail_at - 1) * self._chunk_size
            block = self._solution[start : start + self._prefix] + [
                self._puzzle.poison_move()
            ]
        return self._scripted(context, moves_to_text(self._puzzle, block))


class RandomLegalAgent(Agent):
    """Uniform random legal moves, computed by simulating forward.

    Every emitted move is legal by construction and the harness applies
    blocks fail-fast, so the internal simulated state tracks ground truth
    exactly.  Deterministic for a fixed seed.
    """

    name = "random"

    def __init__(self, puzzle: Puzzle, block_size: int, seed: int) -> None:
        if block_size < 1:
            raise ValueError(f"block_size must be >= 1, got {block_size}")
        self._puzzle = puzzle
        self._block_size = block_size
        self._rng = random.Random(seed)
        self._state = puzzle.initial_state()

    def respond(self, context: AgentContext) -> AgentResponse:
        block = []
        for _ in range(self._block_size):
            if self._puzzle.is_goal(self._state):
                break
            options = self._puzzle.legal_moves(self._state)
            if not options:
                break
            move = self._rng.choice(options)
            self._state = self._puzzle.apply(self._state, move)
            block.append(move)
        return self._scripted(context, moves_to_text(self._puzzle, block))


class ReplayAgent(Agent):
    """Replays recorded response texts (and usages) keyed by turn index.

    One instance can serve both seats of a dialogue, because the turn index
    is global across the trial.
    """

    name = "replay"

    def __init__(
        self,
        responses: Sequence[str],
        usages: Sequence[TokenUsage] | None = None,
    ) -> None:
        if usages is not None and len(usages) != len(responses):
            raise ValueError("usages must match responses one-to-one")
        self._responses = list(responses)
        self._usages = list(usages) if usages is not None else None

    def respond(self, context: AgentContext) -> AgentResponse:
        turn = context.turn_index
        if turn >= len(self._responses):
            raise AgentExhausted(
                f"replay holds {len(self._responses)} responses, asked for turn {turn}"
            )
        text = self._responses[turn]
        if self._usages is not None:
            return AgentResponse(text=text, usage=self._usages[turn])
        return self._scripted(context, text)


class ProseAgent(Agent):
    """Talks about the puzzle without ever emitting a move block."""

    name = "prose"

    _TEXT = (
        "The key insight is to shuttle the smaller pieces out of the way "
        "before committing the larger ones, then rebuild on the far side. "
        "I would start cautiously and reassess after each step."
    )

    def respond(self, context: AgentContext) -> AgentResponse:
        return self._scripted(context, self._TEXT)
