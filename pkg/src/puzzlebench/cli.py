"""Command-line entry point.

Subcommands: solve (print a reference solution), check (referee a moves
file), solvable (river solvability verdict), run (execute experiments),
report (aggregate a trials file), replay (re-run a recorded transcript).

Exit codes: 0 ok; 2 usage, config, or input-format error; 3 unsolvable
configuration; 4 valid moves that stop short of the goal; 5 invalid move.
Progress goes to stderr, data to stdout.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import metrics
from .hanoi import HanoiConfig
from .orchestrator import (
    ConfigError,
    ExperimentConfig,
    TranscriptRecorder,
    load_experiments,
    make_puzzle,
    replay_transcript,
    run_experiment,
)
from .puzzles import HanoiPuzzle, RiverPuzzle, replay as replay_moves
from .river import RiverConfig, SafetyScope
from .solvers import (
    TooLargeError,
    hanoi_optimal,
    reference_river_solution,
    river_bfs,
    river_constructive,
    river_solvable,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSOLVABLE = 3
EXIT_INCOMPLETE = 4
EXIT_INVALID = 5


def _scope(name: str) -> SafetyScope:
    return (
        SafetyScope.BANKS_AND_BOAT
        if name == "banks_and_boat"
        else SafetyScope.BANKS_ONLY
    )


def _build_puzzle(args) -> HanoiPuzzle | RiverPuzzle:
    if args.puzzle == "hanoi":
        if args.k is not None:
            raise ConfigError("--k applies only to the river puzzle")
        return HanoiPuzzle(HanoiConfig(n_disks=args.n))
    if args.k is None:
        raise ConfigError("river requires --k")
    return RiverPuzzle(
        RiverConfig(
            n_pairs=args.n,
            boat_capacity=args.k,
            safety_scope=_scope(args.safety_scope),
        )
    )


def _unsolvable_message(n: int, k: int) -> str:
    verdict = river_solvable(n, k)
    return (
        f"river N={n}, k={k} is unsolvable: with k <= 3 the puzzle is solvable "
        f"only for N <= 2k-1, i.e. N <= {2 * k - 1} here ({verdict.reason})"
    )


def cmd_solve(args) -> int:
    if args.puzzle == "river":
        if args.k is None:
            raise ConfigError("river requires --k")
        verdict = river_solvable(args.n, args.k)
        if not verdict.solvable:
            print(_unsolvable_message(args.n, args.k), file=sys.stderr)
            return EXIT_UNSOLVABLE
    puzzle = _build_puzzle(args)
    if args.puzzle == "hanoi":
        solution = hanoi_optimal(puzzle.config)
    elif args.solver == "bfs":
        try:
            solution = river_bfs(puzzle.config)
        except TooLargeError as exc:
            raise ConfigError(str(exc))
    elif args.solver == "constructive":
        if puzzle.config.boat_capacity < 4:
            raise ConfigError("the constructive solver requires boat capacity k >= 4")
        solution = river_constructive(puzzle.config)
    else:
        solution = reference_river_solution(puzzle.config)
    payload = {
        "puzzle": args.puzzle,
        "n": args.n,
        "length": solution.length,
        "moves": [puzzle.move_to_json(move) for move in solution.moves],
    }
    if args.puzzle == "river":
        payload["k"] = args.k
    print(json.dumps(payload))
    return EXIT_OK


def cmd_check(args) -> int:
    puzzle = _build_puzzle(args)
    try:
        data = json.loads(Path(args.moves_file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read moves file {args.moves_file}: {exc}")
    if isinstance(data, dict) and "moves" in data:
        data = data["moves"]
    if not isinstance(data, list):
        raise ConfigError("moves file must hold a JSON array of moves")
    try:
        moves = [puzzle.move_from_json(entry) for entry in data]
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad move encoding in {args.moves_file}: {exc}")
    final_state, applied, error = replay_moves(puzzle, moves)
    if error is not None:
        print(f"INVALID at move {applied + 1}: {error.reason}")
        return EXIT_INVALID
    if puzzle.is_goal(final_state):
        print("VALID, reaches goal")
        return EXIT_OK
    print("VALID, does not reach goal")
    return EXIT_INCOMPLETE


def cmd_solvable(args) -> int:
    if args.puzzle == "hanoi":
        print(json.dumps({"puzzle": "hanoi", "n": args.n, "solvable": True}))
        return EXIT_OK
    if args.k is None:
        raise ConfigError("river requires --k")
    verdict = river_solvable(args.n, args.k)
    print(
        json.dumps(
            {
                "puzzle": "river",
                "n": args.n,
                "k": args.k,
                "solvable": verdict.solvable,
                "rule": verdict.rule.value,
                "reason": verdict.reason,
            }
        )
    )
    if verdict.solvable:
        return EXIT_OK
    print(_unsolvable_message(args.n, args.k), file=sys.stderr)
    return EXIT_UNSOLVABLE


def _parse_int_list(text: str) -> list[int]:
    """Accepts '7', '3,5,7', and '3..10' range syntax, mixed freely."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            low, high = part.split("..", 1)
            values.extend(range(int(low), int(high) + 1))
        elif part:
            values.append(int(part))
    if not values:
        raise ConfigError(f"empty integer list: {text!r}")
    return values


def _run_configs(args) -> list[ExperimentConfig]:
    if args.config is not None:
        base_configs = load_experiments(args.config)
    else:
        if args.puzzle is None or args.n is None:
            raise ConfigError("run needs either --config or both --puzzle and --n")
        base_configs = [ExperimentConfig(puzzle=args.puzzle, n=0)]

    overrides = {}
    for name in (
        "protocol",
        "p",
        "agent",
        "agent_b",
        "trials",
        "seed",
        "max_requests",
        "loop_threshold",
        "jobs",
        "endpoint",
        "model",
        "k",
    ):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.allow_unsolvable:
        overrides["allow_unsolvable"] = True
    if args.templates is not None:
        overrides["templates_dir"] = args.templates

    n_values = _parse_int_list(args.n) if args.n is not None else None
    configs: list[ExperimentConfig] = []
    for base in base_configs:
        expanded = dataclasses.replace(base, **overrides)
        if n_values is None:
            configs.append(expanded)
        else:
            for n in n_values:
                configs.append(dataclasses.replace(expanded, n=n))
    for config in configs:
        config.validate()
    return configs


def cmd_run(args) -> int:
    configs = _run_configs(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    recorder = None
    if args.transcript is not None:
        if len(configs) != 1:
            raise ConfigError(
                "--transcript records a single experiment; got "
                f"{len(configs)} experiments"
            )
        recorder = TranscriptRecorder(args.transcript)
    all_trials = []
    try:
        for config in configs:
            key = config.key()
            print(
                f"running {key.puzzle} N={key.n} k={key.k} p={key.p} "
                f"{key.protocol} {key.agent} ({config.trials} trials)",
                file=sys.stderr,
            )
            all_trials.extend(run_experiment(config, recorder=recorder))
    finally:
        if recorder is not None:
            recorder.close()
    trials_path = out_dir / "trials.jsonl"
    csv_path = out_dir / "aggregates.csv"
    metrics.write_trials_jsonl(all_trials, trials_path)
    stats = metrics.aggregate_by_key(all_trials, args.pooled_tokens_per_request)
    metrics.write_aggregates_csv(stats, csv_path)
    print(f"wrote {trials_path} and {csv_path}", file=sys.stderr)
    print(_summary_table(stats))
    return EXIT_OK


def _summary_table(stats: list[metrics.AggregateStats]) -> str:
    header = (
        f"{'puzzle':<7} {'N':>4} {'k':>3} {'p':>4} {'protocol':<9} "
        f"{'agent':<18} {'trials':>6} {'ok':>4} {'rate':>6} {'tokens':>12} {'tok/req':>10}"
    )
    lines = [header, "-" * len(header)]
    for row in stats:
        lines.append(
            f"{row.key.puzzle:<7} {row.key.n:>4} "
            f"{'-' if row.key.k is None else row.key.k:>3} "
            f"{'-' if row.key.p is None else row.key.p:>4} "
            f"{row.key.protocol:<9} {row.key.agent:<18} "
            f"{row.trials:>6} {row.successes:>4} {row.success_rate:>6.2f} "
            f"{row.mean_total_tokens:>12.1f} {row.mean_tokens_per_request:>10.1f}"
        )
    return "\n".join(lines)


def cmd_report(args) -> int:
    trials = metrics.read_trials_jsonl(args.trials_file)
    if not trials:
        raise ConfigError(f"{args.trials_file} holds no trials")
    stats = metrics.aggregate_by_key(trials, args.pooled_tokens_per_request)
    if args.out is None:
        metrics.write_aggregates_csv(stats, "/dev/stdout")
    else:
        metrics.write_aggregates_csv(stats, args.out)
        print(_summary_table(stats))
    return EXIT_OK


def cmd_replay(args) -> int:
    if args.config is None:
        raise ConfigError("replay needs --config to rebuild the experiment")
    configs = load_experiments(args.config)
    if len(configs) != 1:
        raise ConfigError("replay needs a config file with exactly one experiment")
    results = replay_transcript(configs[0], args.transcript_file)
    for result in results:
        print(json.dumps(result.to_json(), sort_keys=True))
    succeeded = sum(1 for result in results if result.success)
    print(f"replayed {len(results)} trials, {succeeded} succeeded", file=sys.stderr)
    return EXIT_OK


def _add_puzzle_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("puzzle", choices=("hanoi", "river"))
    parser.add_argument("--n", type=int, required=True, help="disks or couples")
    parser.add_argument("--k", type=int, default=None, help="boat capacity (river)")
    parser.add_argument(
        "--safety-scope",
        dest="safety_scope",
        choices=("banks_only", "banks_and_boat"),
        default="banks_and_boat",
        help="where the river safety constraint applies",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puzzlebench",
        description="Puzzle evaluation harness: exact referees, protocols, metrics.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="print a reference solution as JSON")
    _add_puzzle_params(solve)
    solve.add_argument(
        "--solver",
        choices=("auto", "bfs", "constructive"),
        default="auto",
        help="river solver selection",
    )
    solve.set_defaults(func=cmd_solve)

    check = commands.add_parser("check", help="referee a JSON moves file")
    _add_puzzle_params(check)
    check.add_argument("moves_file", help="JSON array of moves, or object with a moves key")
    check.set_defaults(func=cmd_check)

    solvable = commands.add_parser("solvable", help="print a solvability verdict")
    _add_puzzle_params(solvable)
    solvable.set_defaults(func=cmd_solvable)

    run = commands.add_parser("run", help="run experiments, write trials and aggregates")
    run.add_argument("--config", default=None, help="experiment config file (TOML/JSON)")
    run.add_argument("--puzzle", choices=("hanoi", "river"), default=None)
    run.add_argument("--n", default=None, help="int, list, or range, e.g. 3..10")
    run.add_argument("--k", type=int, default=None)
    run.add_argument("--p", type=int, default=None, help="moves per substage")
    run.add_argument("--protocol", choices=("single", "stepwise", "agentic"), default=None)
    run.add_argument("--agent", default=None, help="oracle | random | prose | saboteur[:fail_at[:prefix]] | llm[:endpoint.toml]")
    run.add_argument("--agent-b", dest="agent_b", default=None, help="second seat for agentic runs")
    run.add_argument("--trials", type=int, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--max-requests", dest="max_requests", type=int, default=None)
    run.add_argument("--loop-threshold", dest="loop_threshold", type=int, default=None)
    run.add_argument("--jobs", type=int, default=None, help="parallel trial workers")
    run.add_argument("--endpoint", default=None, help="endpoint config for llm agents")
    run.add_argument("--model", default=None, help="override the endpoint config's model")
    run.add_argument("--templates", default=None, help="directory of template overrides")
    run.add_argument("--transcript", default=None, help="record exchanges to this JSONL file")
    run.add_argument(
        "--allow-unsolvable",
        dest="allow_unsolvable",
        action="store_true",
        help="permit river configs that fail the solvability condition",
    )
    run.add_argument(
        "--pooled-tokens-per-request",
        dest="pooled_tokens_per_request",
        action="store_true",
        help="report pooled tokens-per-request instead of per-trial averages",
    )
    run.add_argument("--out", default="results", help="output directory")
    run.set_defaults(func=cmd_run)

    report = commands.add_parser("report", help="aggregate a trials JSONL file")
    report.add_argument("trials_file")
    report.add_argument("--out", default=None, help="aggregates CSV path (default: stdout)")
    report.add_argument(
        "--pooled-tokens-per-request",
        dest="pooled_tokens_per_request",
        action="store_true",
    )
    report.set_defaults(func=cmd_report)

    rep = commands.add_parser("replay", help="re-run a recorded transcript")
    rep.add_argument("transcript_file")
    rep.add_argument("--config", default=None, help="experiment config file")
    rep.set_defaults(func=cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (metrics.MetricsIOError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
