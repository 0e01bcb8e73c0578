"""Evaluation harness for long-horizon puzzle reasoning.

Exact Towers of Hanoi and River Crossing referees, oracle solvers with
solvability analysis, tolerant move-list parsing, pluggable solver agents,
three evaluation protocols, and token-accounting metrics.
"""

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
from .hanoi import HanoiConfig, HanoiMove, HanoiState
from .llm import ChatCompletionsAgent, EndpointConfig, ProviderError, TransportError
from .metrics import (
    AggregateStats,
    EmptyInputError,
    MixedConfigError,
    aggregate,
    aggregate_by_key,
    read_aggregates_csv,
    read_trials_jsonl,
    write_aggregates_csv,
    write_trials_jsonl,
)
from .orchestrator import (
    ConfigError,
    ConfigKey,
    ExperimentConfig,
    SubstageRecord,
    TranscriptRecorder,
    TrialResult,
    load_experiments,
    make_agent,
    make_puzzle,
    replay_transcript,
    run_agentic,
    run_experiment,
    run_single,
    run_stepwise,
)
from .parsing import ParseError, ParseOutcome, extract_hanoi_moves, extract_river_moves
from .prompts import PromptLibrary, UnboundPlaceholderError, UnknownTemplateError
from .puzzles import HanoiPuzzle, Puzzle, RiverPuzzle, moves_to_text, replay
from .river import Person, RiverConfig, RiverMove, RiverState, Role, SafetyScope, Side
from .solvers import (
    Solution,
    SolvabilityRule,
    SolvabilityVerdict,
    TooLargeError,
    chunk_solution,
    hanoi_optimal,
    reference_river_solution,
    river_bfs,
    river_constructive,
    river_solvable,
)

__version__ = "0.1.0"
