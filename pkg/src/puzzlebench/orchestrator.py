"""Trial orchestration for the three protocols.

The harness owns the ground-truth state at all times.  Single-shot sends one
prompt asking for the whole solution.  Stepwise re-renders the current state
each substage and asks for the next p moves, with no dialogue history.
Agentic alternates two agents over a shared transcript; after the opening
turn the agents see moves only, never a rendered state, and must infer the
position themselves.  Every proposed move is validated fail-fast; a trial
ends at the first illegal or unparseable block, on goal, on request budget,
or when a state recurs past the loop threshold.
"""

from __future__ import annotations

import json
import math
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from .agents import (
    Agent,
    AgentContext,
    AgentExhausted,
    AgentResponse,
    Exchange,
    OracleAgent,
    ProseAgent,
    RandomLegalAgent,
    ReplayAgent,
    SaboteurAgent,
    TokenUsage,
)
from .errors import MoveError
from .hanoi import HanoiConfig
from .llm import ProviderError, TransportError
from .parsing import ParseError
from .prompts import PromptLibrary, default_template_id
from .puzzles import HanoiPuzzle, Puzzle, RiverPuzzle, moves_to_text
from .river import RiverConfig, SafetyScope
from .solvers import river_solvable

SUCCESS = "success"
FAILURE = "failure"

ILLEGAL_MOVE = "illegal_move"
FORMAT_ERROR = "format_error"
REQUEST_BUDGET_EXHAUSTED = "request_budget_exhausted"
LOOP_DETECTED = "loop_detected"
TRANSPORT_FAILURE = "transport_failure"
FAILURE_CAUSES = (
    ILLEGAL_MOVE,
    FORMAT_ERROR,
    REQUEST_BUDGET_EXHAUSTED,
    LOOP_DETECTED,
    TRANSPORT_FAILURE,
)

PROTOCOLS = ("single", "stepwise", "agentic")
TEMPLATE_SLOTS = ("system", "single", "stepwise", "agentic_opening", "agentic_turn")
AGENT_KINDS = ("oracle", "random", "prose", "saboteur", "replay", "llm")


class ConfigError(ValueError):
    """Experiment configuration rejected before any trial runs."""


@dataclass(frozen=True)
class ConfigKey:
    """Row identity for aggregation: one key per experiment cell."""

    puzzle: str
    n: int
    k: int | None
    p: int | None
    protocol: str
    agent: str

    def to_json(self) -> dict:
        return {
            "puzzle": self.puzzle,
            "n": self.n,
            "k": self.k,
            "p": self.p,
            "protocol": self.protocol,
            "agent": self.agent,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConfigKey":
        return cls(
            puzzle=data["puzzle"],
            n=int(data["n"]),
            k=None if data.get("k") is None else int(data["k"]),
            p=None if data.get("p") is None else int(data["p"]),
            protocol=data["protocol"],
            agent=data["agent"],
        )


@dataclass
class ExperimentConfig:
    puzzle: str
    n: int
    k: int | None = None
    protocol: str = "single"
    p: int | None = None
    agent: str = "oracle"
    agent_b: str | None = None
    trials: int = 1
    seed: int = 0
    max_requests: int | None = None
    loop_threshold: int = 3
    allow_unsolvable: bool = False
    safety_scope: str = "banks_and_boat"
    transcript_window: int | None = None
    templates_dir: str | None = None
    template_ids: dict = field(default_factory=dict)
    jobs: int = 1
    endpoint: str | None = None
    model: str | None = None

    def validate(self) -> None:
        if self.puzzle not in ("hanoi", "river"):
            raise ConfigError(f"unknown puzzle {self.puzzle!r}")
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if self.protocol not in PROTOCOLS:
            raise ConfigError(f"unknown protocol {self.protocol!r}")
        if self.protocol == "single":
            if self.p is not None:
                raise ConfigError("p applies only to stepwise and agentic protocols")
        else:
            if self.p is None or self.p < 1:
                raise ConfigError(
                    f"protocol {self.protocol!r} requires p >= 1, got {self.p}"
                )
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.loop_threshold < 1:
            raise ConfigError(f"loop_threshold must be >= 1, got {self.loop_threshold}")
        if self.max_requests is not None and self.max_requests < 1:
            raise ConfigError(f"max_requests must be >= 1, got {self.max_requests}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if self.transcript_window is not None and self.transcript_window < 1:
            raise ConfigError(
                f"transcript_window must be >= 1, got {self.transcript_window}"
            )
        if self.safety_scope not in ("banks_only", "banks_and_boat"):
            raise ConfigError(f"unknown safety_scope {self.safety_scope!r}")
        unknown_slots = sorted(set(self.template_ids) - set(TEMPLATE_SLOTS))
        if unknown_slots:
            raise ConfigError(f"unknown template slots: {unknown_slots}")
        _parse_agent_spec(self.agent)
        if self.agent_b is not None:
            if self.protocol != "agentic":
                raise ConfigError("agent_b applies only to the agentic protocol")
            _parse_agent_spec(self.agent_b)
        if self.puzzle == "hanoi":
            if self.k is not None:
                raise ConfigError("k applies only to the river puzzle")
        else:
            if self.k is None or self.k < 1:
                raise ConfigError(f"river requires boat capacity k >= 1, got {self.k}")
            verdict = river_solvable(self.n, self.k)
            if not verdict.solvable and not self.allow_unsolvable:
                raise ConfigError(
                    f"river N={self.n}, k={self.k} is unsolvable ({verdict.reason}); "
                    "pass allow_unsolvable to run it anyway"
                )

    @property
    def agent_label(self) -> str:
        if self.protocol == "agentic":
            return f"{self.agent}+{self.agent_b or self.agent}"
        return self.agent

    def key(self) -> ConfigKey:
        return ConfigKey(
            puzzle=self.puzzle,
            n=self.n,
            k=self.k,
            p=self.p,
            protocol=self.protocol,
            agent=self.agent_label,
        )


def _load_config_data(path: Path) -> dict:
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        return json.loads(text)
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    return tomllib.loads(text)


def _config_from_dict(data: dict, source: str) -> ExperimentConfig:
    known = set(ExperimentConfig.__dataclass_fields__)
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown experiment config keys in {source}: {unknown}")
    if "puzzle" not in data or "n" not in data:
        raise ConfigError(f"experiment config in {source} must set puzzle and n")
    return ExperimentConfig(**data)


def load_experiments(path: str | Path) -> list[ExperimentConfig]:
    """Read one config file into a list of experiments.

    A file with an ``experiments`` array yields one config per entry; any
    top-level keys outside the array act as shared defaults.
    """
    path = Path(path)
    data = _load_config_data(path)
    if "experiments" in data:
        entries = data["experiments"]
        if not isinstance(entries, list) or not entries:
            raise ConfigError(f"{path}: experiments must be a non-empty array")
        defaults = {key: value for key, value in data.items() if key != "experiments"}
        configs = []
        for index, entry in enumerate(entries):
            merged = {**defaults, **entry}
            configs.append(_config_from_dict(merged, f"{path} entry {index}"))
        return configs
    return [_config_from_dict(data, str(path))]


def make_puzzle(config: ExperimentConfig) -> Puzzle:
    if config.puzzle == "hanoi":
        return HanoiPuzzle(HanoiConfig(n_disks=config.n))
    scope = (
        SafetyScope.BANKS_AND_BOAT
        if config.safety_scope == "banks_and_boat"
        else SafetyScope.BANKS_ONLY
    )
    return RiverPuzzle(
        RiverConfig(n_pairs=config.n, boat_capacity=config.k, safety_scope=scope)
    )


def _parse_agent_spec(spec: str) -> tuple[str, list[str]]:
    kind, _, rest = spec.partition(":")
    if kind not in AGENT_KINDS:
        raise ConfigError(f"unknown agent kind {kind!r} in spec {spec!r}")
    if kind == "llm":
        return kind, [rest] if rest else []
    args = rest.split(":") if rest else []
    if kind == "saboteur":
        if len(args) > 2:
            raise ConfigError(f"saboteur spec takes at most fail_at:prefix, got {spec!r}")
        for arg in args:
            if not arg.isdigit():
                raise ConfigError(f"saboteur spec arguments must be integers: {spec!r}")
    elif args:
        raise ConfigError(f"agent kind {kind!r} takes no arguments, got {spec!r}")
    if kind == "replay":
        raise ConfigError("replay agents are built from a transcript, not a spec string")
    return kind, args


def make_agent(
    spec: str, puzzle: Puzzle, config: ExperimentConfig, seed: int
) -> Agent:
    kind, args = _parse_agent_spec(spec)
    chunk = None if config.protocol == "single" else config.p
    if kind == "oracle":
        return OracleAgent(puzzle, chunk_size=chunk)
    if kind == "prose":
        return ProseAgent()
    if kind == "saboteur":
        fail_at = int(args[0]) if len(args) >= 1 else 1
        prefix = int(args[1]) if len(args) >= 2 else 0
        return SaboteurAgent(puzzle, chunk_size=chunk, fail_at=fail_at, prefix=prefix)
    if kind == "random":
        block = chunk if chunk is not None else (puzzle.min_solution_length() or 8)
        return RandomLegalAgent(puzzle, block_size=block, seed=seed)
    if kind == "llm":
        from dataclasses import replace

        from .llm import ChatCompletionsAgent, EndpointConfig

        path = args[0] if args else config.endpoint
        if not path:
            raise ConfigError(
                "llm agent needs an endpoint config: use llm:<path> or set endpoint"
            )
        endpoint = EndpointConfig.from_file(path)
        if config.model is not None:
            endpoint = replace(endpoint, model=config.model)
        return ChatCompletionsAgent(endpoint)
    raise ConfigError(f"unknown agent kind {kind!r}")


def resolve_max_requests(config: ExperimentConfig, puzzle: Puzzle) -> int:
    """Default request budget: three times the minimal substage count."""
    if config.max_requests is not None:
        return config.max_requests
    if config.protocol == "single":
        return 1
    minimal = puzzle.min_solution_length()
    if minimal is None:
        raise ConfigError(
            "no reference solution exists for this configuration, so max_requests "
            "must be set explicitly"
        )
    return 3 * math.ceil(minimal / config.p)


@dataclass(frozen=True)
class SubstageRecord:
    """One prompt/response/validate cycle, fully replayable."""

    turn: int
    seat: str
    prompt: str
    response: str
    parsed_moves: list
    applied: int
    state_after: object
    usage: TokenUsage

    def to_json(self) -> dict:
        return {
            "turn": self.turn,
            "seat": self.seat,
            "prompt": self.prompt,
            "response": self.response,
            "parsed_moves": self.parsed_moves,
            "applied": self.applied,
            "state_after": self.state_after,
            "usage": self.usage.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubstageRecord":
        return cls(
            turn=int(data["turn"]),
            seat=data["seat"],
            prompt=data["prompt"],
            response=data["response"],
            parsed_moves=data["parsed_moves"],
            applied=int(data["applied"]),
            state_after=data["state_after"],
            usage=TokenUsage.from_json(data["usage"]),
        )


@dataclass(frozen=True)
class TrialResult:
    config_key: ConfigKey
    trial_index: int
    outcome: str
    cause: str | None
    failure_turn: int | None
    detail: str
    moves_executed: int
    requests: int
    usage: TokenUsage
    substages: list

    @property
    def success(self) -> bool:
        return self.outcome == SUCCESS

    def to_json(self) -> dict:
        return {
            "config_key": self.config_key.to_json(),
            "trial_index": self.trial_index,
            "outcome": self.outcome,
            "cause": self.cause,
            "failure_turn": self.failure_turn,
            "detail": self.detail,
            "moves_executed": self.moves_executed,
            "requests": self.requests,
            "usage": self.usage.to_json(),
            "substages": [s.to_json() for s in self.substages],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TrialResult":
        return cls(
            config_key=ConfigKey.from_json(data["config_key"]),
            trial_index=int(data["trial_index"]),
            outcome=data["outcome"],
            cause=data["cause"],
            failure_turn=data["failure_turn"],
            detail=data["detail"],
            moves_executed=int(data["moves_executed"]),
            requests=int(data["requests"]),
            usage=TokenUsage.from_json(data["usage"]),
            substages=[SubstageRecord.from_json(s) for s in data["substages"]],
        )


class TranscriptRecorder:
    """Appends one JSONL line per exchange; safe across concurrent trials."""

    def __init__(self, path: str | Path) -> None:
        self._path = Path(path)
        self._lock = threading.Lock()
        self._file = open(self._path, "w", encoding="utf-8")

    def record(
        self, trial_id: int, turn: int, request: str, response: AgentResponse
    ) -> None:
        line = json.dumps(
            {
                "trial_id": trial_id,
                "turn": turn,
                "request": request,
                "response_text": response.text,
                "usage": response.usage.to_json(),
                "timestamps": {
                    "recorded": datetime.now(timezone.utc).isoformat(),
                    "latency_s": response.latency,
                },
            },
            sort_keys=True,
        )
        with self._lock:
            self._file.write(line + "\n")

    def close(self) -> None:
        with self._lock:
            self._file.close()

    def __enter__(self) -> "TranscriptRecorder":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


class _Failure(Exception):
    """Internal signal carrying a trial's failure verdict."""

    def __init__(self, cause: str, turn: int | None, detail: str) -> None:
        super().__init__(detail)
        self.cause = cause
        self.turn = turn
        self.detail = detail


class _TrialRun:
    """Sequential state machine for one trial; shared by all protocols."""

    def __init__(
        self,
        config: ExperimentConfig,
        puzzle: Puzzle,
        library: PromptLibrary,
        trial_index: int,
        recorder: TranscriptRecorder | None,
    ) -> None:
        self.config = config
        self.puzzle = puzzle
        self.library = library
        self.trial_index = trial_index
        self.recorder = recorder
        self.state = puzzle.initial_state()
        self.visits: Counter = Counter({self._encode(self.state): 1})
        self.substages: list[SubstageRecord] = []
        self.usage = TokenUsage()
        self.requests = 0
        self.moves_executed = 0
        self.bindings = dict(puzzle.prompt_bindings())
        self.system_text = library.render(self._template("system"), self.bindings)

    def _template(self, slot: str) -> str:
        return self.config.template_ids.get(
            slot, default_template_id(self.puzzle.kind, slot)
        )

    def _encode(self, state) -> str:
        return json.dumps(self.puzzle.state_to_json(state))

    def render(self, slot: str, extra: dict) -> str:
        return self.library.render(self._template(slot), {**self.bindings, **extra})

    def request(
        self, agent: Agent, user_text: str, transcript: tuple[Exchange, ...], seat: str
    ) -> AgentResponse:
        turn = self.requests + 1
        context = AgentContext(
            system_text=self.system_text,
            user_text=user_text,
            transcript=transcript,
            turn_index=self.requests,
        )
        try:
            response = agent.respond(context)
        except (AgentExhausted, TransportError, ProviderError) as exc:
            # The request was attempted, so it counts against the budget.
            self.requests = turn
            raise _Failure(
                TRANSPORT_FAILURE,
                turn,
                f"turn {turn} ({seat}): agent failed to respond: {exc}",
            ) from exc
        self.requests = turn
        self.usage = self.usage + response.usage
        if self.recorder is not None:
            self.recorder.record(self.trial_index, turn, user_text, response)
        return response

    def parse_block(
        self, response: AgentResponse, seat: str, prompt: str
    ) -> list:
        turn = self.requests
        try:
            outcome = self.puzzle.extract_moves(response.text)
        except ParseError as exc:
            self.substages.append(
                SubstageRecord(
                    turn=turn,
                    seat=seat,
                    prompt=prompt,
                    response=response.text,
                    parsed_moves=[],
                    applied=0,
                    state_after=self.puzzle.state_to_json(self.state),
                    usage=response.usage,
                )
            )
            raise _Failure(
                FORMAT_ERROR, turn, f"turn {turn} ({seat}): {exc.reason}: {exc}"
            ) from exc
        return list(outcome.moves)

    def apply_block(
        self,
        moves: list,
        seat: str,
        prompt: str,
        response: AgentResponse,
        limit: int | None,
        detect_loops: bool,
    ) -> tuple[list, bool]:
        """Apply up to ``limit`` moves fail-fast; returns (applied, goal?)."""
        turn = self.requests
        block = moves if limit is None else moves[:limit]
        applied: list = []
        failure: _Failure | None = None
        goal = False
        for index, move in enumerate(block, start=1):
            try:
                next_state = self.puzzle.apply(self.state, move)
            except MoveError as exc:
                failure = _Failure(
                    ILLEGAL_MOVE,
                    turn,
                    f"turn {turn} ({seat}): move {index} "
                    f"{json.dumps(self.puzzle.move_to_json(move))} rejected: {exc.reason}",
                )
                break
            self.state = next_state
            self.moves_executed += 1
            applied.append(move)
            if self.puzzle.is_goal(self.state):
                goal = True
                break
            if detect_loops:
                encoded = self._encode(self.state)
                self.visits[encoded] += 1
                if self.visits[encoded] > self.config.loop_threshold:
                    failure = _Failure(
                        LOOP_DETECTED,
                        turn,
                        f"turn {turn} ({seat}): state revisited more than "
                        f"{self.config.loop_threshold} times after move {index}",
                    )
                    break
        self.substages.append(
            SubstageRecord(
                turn=turn,
                seat=seat,
                prompt=prompt,
                response=response.text,
                parsed_moves=[self.puzzle.move_to_json(m) for m in moves],
                applied=len(applied),
                state_after=self.puzzle.state_to_json(self.state),
                usage=response.usage,
            )
        )
        if failure is not None:
            raise failure
        return applied, goal

    def result(
        self,
        outcome: str,
        cause: str | None = None,
        failure_turn: int | None = None,
        detail: str = "",
    ) -> TrialResult:
        return TrialResult(
            config_key=self.config.key(),
            trial_index=self.trial_index,
            outcome=outcome,
            cause=cause,
            failure_turn=failure_turn,
            detail=detail,
            moves_executed=self.moves_executed,
            requests=self.requests,
            usage=self.usage,
            substages=self.substages,
        )


def _run_trial(
    config: ExperimentConfig,
    agents: tuple[Agent, ...],
    trial_index: int,
    library: PromptLibrary,
    recorder: TranscriptRecorder | None,
    puzzle: Puzzle | None = None,
) -> TrialResult:
    puzzle = puzzle if puzzle is not None else make_puzzle(config)
    run = _TrialRun(config, puzzle, library, trial_index, recorder)
    max_requests = resolve_max_requests(config, puzzle)
    try:
        if config.protocol == "single":
            goal = _drive_single(run, agents[0])
        elif config.protocol == "stepwise":
            goal = _drive_stepwise(run, agents[0], max_requests)
        else:
            goal = _drive_agentic(run, agents[0], agents[1], max_requests)
    except _Failure as failure:
        return run.result(FAILURE, failure.cause, failure.turn, failure.detail)
    if goal:
        # Success claims are re-checked against the puzzle core, never taken
        # from protocol bookkeeping.
        assert puzzle.is_goal(run.state)
        return run.result(SUCCESS)
    return run.result(
        FAILURE,
        REQUEST_BUDGET_EXHAUSTED,
        None,
        f"request budget {max_requests} spent without reaching the goal",
    )


def _drive_single(run: _TrialRun, agent: Agent) -> bool:
    prompt = run.render(
        "single", {"state": run.puzzle.render_state(run.state)}
    )
    response = run.request(agent, prompt, (), "solver")
    moves = run.parse_block(response, "solver", prompt)
    _, goal = run.apply_block(moves, "solver", prompt, response, None, False)
    return goal


def _drive_stepwise(run: _TrialRun, agent: Agent, max_requests: int) -> bool:
    p = run.config.p
    while run.requests < max_requests:
        prompt = run.render(
            "stepwise", {"state": run.puzzle.render_state(run.state), "p": p}
        )
        response = run.request(agent, prompt, (), "solver")
        moves = run.parse_block(response, "solver", prompt)
        _, goal = run.apply_block(moves, "solver", prompt, response, p, True)
        if goal:
            return True
    return False


def _drive_agentic(
    run: _TrialRun, agent_a: Agent, agent_b: Agent, max_requests: int
) -> bool:
    p = run.config.p
    transcript: list[Exchange] = []
    latest_block = ""
    while run.requests < max_requests:
        seat = "A" if run.requests % 2 == 0 else "B"
        agent = agent_a if seat == "A" else agent_b
        if run.requests == 0:
            prompt = run.render(
                "agentic_opening",
                {"state": run.puzzle.render_state(run.state), "p": p},
            )
        else:
            prompt = run.render(
                "agentic_turn", {"p": p, "latest_moves": latest_block}
            )
        window = transcript
        if run.config.transcript_window is not None:
            window = transcript[-run.config.transcript_window :]
        response = run.request(agent, prompt, tuple(window), seat)
        moves = run.parse_block(response, seat, prompt)
        applied, goal = run.apply_block(moves, seat, prompt, response, p, True)
        transcript.append(Exchange(prompt=prompt, response=response.text))
        latest_block = moves_to_text(run.puzzle, applied)
        if goal:
            return True
    return False


def run_single(
    config: ExperimentConfig,
    agent: Agent,
    trial_index: int = 0,
    library: PromptLibrary | None = None,
    recorder: TranscriptRecorder | None = None,
) -> TrialResult:
    config.validate()
    if config.protocol != "single":
        raise ConfigError(f"run_single requires protocol 'single', got {config.protocol!r}")
    library = library if library is not None else PromptLibrary(config.templates_dir)
    return _run_trial(config, (agent,), trial_index, library, recorder)


def run_stepwise(
    config: ExperimentConfig,
    agent: Agent,
    trial_index: int = 0,
    library: PromptLibrary | None = None,
    recorder: TranscriptRecorder | None = None,
) -> TrialResult:
    config.validate()
    if config.protocol != "stepwise":
        raise ConfigError(
            f"run_stepwise requires protocol 'stepwise', got {config.protocol!r}"
        )
    library = library if library is not None else PromptLibrary(config.templates_dir)
    return _run_trial(config, (agent,), trial_index, library, recorder)


def run_agentic(
    config: ExperimentConfig,
    agent_a: Agent,
    agent_b: Agent,
    trial_index: int = 0,
    library: PromptLibrary | None = None,
    recorder: TranscriptRecorder | None = None,
) -> TrialResult:
    config.validate()
    if config.protocol != "agentic":
        raise ConfigError(
            f"run_agentic requires protocol 'agentic', got {config.protocol!r}"
        )
    library = library if library is not None else PromptLibrary(config.templates_dir)
    return _run_trial(config, (agent_a, agent_b), trial_index, library, recorder)


def trial_seeds(config: ExperimentConfig, trial_index: int) -> tuple[int, int]:
    """Derived per-trial seeds, one per dialogue seat."""
    base = 2 * (config.seed + trial_index)
    return base, base + 1


def build_trial_agents(
    config: ExperimentConfig, puzzle: Puzzle, trial_index: int
) -> tuple[Agent, ...]:
    """Fresh agents for one trial; scripted state never leaks across trials."""
    seed_a, seed_b = trial_seeds(config, trial_index)
    first = make_agent(config.agent, puzzle, config, seed_a)
    if config.protocol != "agentic":
        return (first,)
    second = make_agent(config.agent_b or config.agent, puzzle, config, seed_b)
    return (first, second)


def run_experiment(
    config: ExperimentConfig,
    recorder: TranscriptRecorder | None = None,
    progress: Callable[[TrialResult], None] | None = None,
) -> list[TrialResult]:
    config.validate()
    library = PromptLibrary(config.templates_dir)
    puzzle = make_puzzle(config)
    resolve_max_requests(config, puzzle)  # fail before any trial if unresolvable

    def one(trial_index: int) -> TrialResult:
        agents = build_trial_agents(config, puzzle, trial_index)
        result = _run_trial(config, agents, trial_index, library, recorder, puzzle)
        if progress is not None:
            progress(result)
        return result

    if config.jobs == 1:
        return [one(i) for i in range(config.trials)]
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(one, range(config.trials)))


def replay_transcript(
    config: ExperimentConfig, transcript_path: str | Path
) -> list[TrialResult]:
    """Re-run recorded trials through the full pipeline.

    The transcript supplies every agent response (text and usage); the
    harness re-validates all moves, so verdicts come out of the same code
    path as live runs.
    """
    config.validate()
    exchanges: dict[int, list[tuple[int, str, TokenUsage]]] = {}
    path = Path(transcript_path)
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                trial_id = int(record["trial_id"])
                turn = int(record["turn"])
                text = record["response_text"]
                usage = TokenUsage.from_json(record.get("usage", {}))
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}, line {line_number}: bad transcript record: {exc}")
            exchanges.setdefault(trial_id, []).append((turn, text, usage))
    if not exchanges:
        raise ValueError(f"{path}: transcript holds no exchanges")
    library = PromptLibrary(config.templates_dir)
    puzzle = make_puzzle(config)
    results = []
    for trial_id in sorted(exchanges):
        ordered = sorted(exchanges[trial_id])
        agent = ReplayAgent(
            [text for _, text, _ in ordered], [usage for _, _, usage in ordered]
        )
        seats = (agent,) if config.protocol != "agentic" else (agent, agent)
        results.append(_run_trial(config, seats, trial_id, library, None, puzzle))
    return results
