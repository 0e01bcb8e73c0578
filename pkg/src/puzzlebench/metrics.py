"""Aggregation of trial results into the reported quantities.

Per experiment cell: success rate, mean and population standard deviation
of total tokens, and tokens per request computed per trial then averaged.
Failed trials count toward the token statistics.  Aggregates persist to a
fixed-schema CSV, trial results to JSONL; both round-trip exactly.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from .orchestrator import FAILURE_CAUSES, ConfigKey, TrialResult

CSV_COLUMNS = (
    "puzzle",
    "N",
    "k",
    "p",
    "protocol",
    "agent",
    "trials",
    "successes",
    "success_rate",
    "mean_total_tokens",
    "std_total_tokens",
    "mean_tokens_per_request",
    "cause_illegal",
    "cause_format",
    "cause_budget",
    "cause_loop",
    "cause_transport",
)

_CAUSE_COLUMNS = {
    "illegal_move": "cause_illegal",
    "format_error": "cause_format",
    "request_budget_exhausted": "cause_budget",
    "loop_detected": "cause_loop",
    "transport_failure": "cause_transport",
}

CSV_HEADER_COMMENT = (
    "# std_total_tokens is the population standard deviation over per-trial "
    "totals; mean_tokens_per_request averages each trial's total/requests "
    "ratio; failed trials are included in all token statistics"
)


class EmptyInputError(ValueError):
    pass


class MixedConfigError(ValueError):
    pass


class MetricsIOError(ValueError):
    """A metrics file could not be read; message names file and line."""


@dataclass(frozen=True)
class AggregateStats:
    key: ConfigKey
    trials: int
    successes: int
    success_rate: float
    mean_total_tokens: float
    std_total_tokens: float
    mean_tokens_per_request: float
    failure_causes: dict = field(default_factory=dict)

    def cause_count(self, cause: str) -> int:
        return int(self.failure_causes.get(cause, 0))


def aggregate(
    trials: list[TrialResult],
    key: ConfigKey | None = None,
    pooled_tokens_per_request: bool = False,
) -> AggregateStats:
    """Fold one experiment cell's trials into AggregateStats.

    ``pooled_tokens_per_request`` switches the per-request metric to the
    pooled ratio (sum of totals over sum of requests) instead of the
    default per-trial-then-averaged form.
    """
    if not trials:
        raise EmptyInputError("cannot aggregate zero trials")
    keys = {trial.config_key for trial in trials}
    if len(keys) > 1:
        raise MixedConfigError(f"trials span {len(keys)} distinct config keys")
    observed = next(iter(keys))
    if key is not None and key != observed:
        raise MixedConfigError(f"trials carry key {observed}, expected {key}")

    successes = sum(1 for trial in trials if trial.success)
    totals = [trial.usage.total_tokens for trial in trials]
    if pooled_tokens_per_request:
        request_sum = sum(trial.requests for trial in trials)
        per_request = sum(totals) / request_sum if request_sum else 0.0
    else:
        ratios = [
            trial.usage.total_tokens / trial.requests if trial.requests else 0.0
            for trial in trials
        ]
        per_request = statistics.fmean(ratios)
    causes: dict[str, int] = {cause: 0 for cause in FAILURE_CAUSES}
    for trial in trials:
        if trial.cause is not None:
            causes[trial.cause] = causes.get(trial.cause, 0) + 1
    return AggregateStats(
        key=observed,
        trials=len(trials),
        successes=successes,
        success_rate=successes / len(trials),
        mean_total_tokens=statistics.fmean(totals),
        std_total_tokens=statistics.pstdev(totals),
        mean_tokens_per_request=per_request,
        failure_causes=causes,
    )


def aggregate_by_key(
    trials: list[TrialResult], pooled_tokens_per_request: bool = False
) -> list[AggregateStats]:
    """Group mixed trials by config key; rows ordered by key."""
    if not trials:
        raise EmptyInputError("cannot aggregate zero trials")
    groups: dict[ConfigKey, list[TrialResult]] = {}
    for trial in trials:
        groups.setdefault(trial.config_key, []).append(trial)

    def order(key: ConfigKey):
        return (
            key.puzzle,
            key.n,
            key.k if key.k is not None else -1,
            key.p if key.p is not None else -1,
            key.protocol,
            key.agent,
        )

    return [
        aggregate(groups[key], key, pooled_tokens_per_request)
        for key in sorted(groups, key=order)
    ]


def _format_number(value: float) -> str:
    # repr round-trips floats exactly, so read-after-write is lossless.
    return repr(float(value))


def write_aggregates_csv(stats: list[AggregateStats], path: str | Path) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(CSV_HEADER_COMMENT + "\n")
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for row in stats:
            writer.writerow(
                [
                    row.key.puzzle,
                    row.key.n,
                    "" if row.key.k is None else row.key.k,
                    "" if row.key.p is None else row.key.p,
                    row.key.protocol,
                    row.key.agent,
                    row.trials,
                    row.successes,
                    _format_number(row.success_rate),
                    _format_number(row.mean_total_tokens),
                    _format_number(row.std_total_tokens),
                    _format_number(row.mean_tokens_per_request),
                ]
                + [row.cause_count(cause) for cause in FAILURE_CAUSES]
            )


def read_aggregates_csv(path: str | Path) -> list[AggregateStats]:
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as handle:
        rows = [line for line in handle if not line.startswith("#")]
    reader = csv.DictReader(rows)
    if reader.fieldnames is None:
        raise MetricsIOError(f"{path}: no CSV header found")
    missing = [column for column in CSV_COLUMNS if column not in reader.fieldnames]
    if missing:
        raise MetricsIOError(f"{path}: missing CSV columns {missing}")
    stats = []
    for index, row in enumerate(reader, start=1):
        try:
            key = ConfigKey(
                puzzle=row["puzzle"],
                n=int(row["N"]),
                k=int(row["k"]) if row["k"] else None,
                p=int(row["p"]) if row["p"] else None,
                protocol=row["protocol"],
                agent=row["agent"],
            )
            stats.append(
                AggregateStats(
                    key=key,
                    trials=int(row["trials"]),
                    successes=int(row["successes"]),
                    success_rate=float(row["success_rate"]),
                    mean_total_tokens=float(row["mean_total_tokens"]),
                    std_total_tokens=float(row["std_total_tokens"]),
                    mean_tokens_per_request=float(row["mean_tokens_per_request"]),
                    failure_causes={
                        cause: int(row[column])
                        for cause, column in _CAUSE_COLUMNS.items()
                    },
                )
            )
        except (KeyError, ValueError) as exc:
            raise MetricsIOError(f"{path}, data row {index}: {exc}") from exc
    return stats


def write_trials_jsonl(trials: list[TrialResult], path: str | Path) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as handle:
        for trial in trials:
            handle.write(json.dumps(trial.to_json(), sort_keys=True) + "\n")


def read_trials_jsonl(path: str | Path) -> list[TrialResult]:
    path = Path(path)
    trials = []
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                trials.append(TrialResult.from_json(json.loads(line)))
            except (ValueError, KeyError, TypeError) as exc:
                raise MetricsIOError(
                    f"{path}, line {line_number}: bad trial record: {exc}"
                ) from exc
    return trials
