"""Reader for the aggregates CSV schema.

The harness writes one row per experiment cell with a leading ``#`` comment
line.  This package consumes that file format and nothing else; it stays
decoupled from the harness code on purpose.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

# The columns the charts reference.  Extra columns (failure-cause counts,
# future additions) pass through untouched.
REQUIRED_COLUMNS = (
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
)


class SchemaError(ValueError):
    """The CSV cannot back a figure; the message names what is wrong."""


@dataclass(frozen=True)
class FigureRow:
    puzzle: str
    n: int
    k: int | None
    p: int | None
    protocol: str
    agent: str
    trials: int
    successes: int
    success_rate: float
    mean_total_tokens: float
    std_total_tokens: float
    mean_tokens_per_request: float


def read_rows(path: str | Path) -> list[FigureRow]:
    """Parse an aggregates CSV into rows, validating the schema."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            lines = [line for line in handle if not line.startswith("#")]
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    reader = csv.DictReader(lines)
    if reader.fieldnames is None:
        raise SchemaError(f"{path}: no CSV header found")
    missing = [column for column in REQUIRED_COLUMNS if column not in reader.fieldnames]
    if missing:
        raise SchemaError(f"{path}: missing CSV columns {missing}")
    rows = []
    for index, record in enumerate(reader, start=1):
        try:
            rows.append(
                FigureRow(
                    puzzle=record["puzzle"],
                    n=int(record["N"]),
                    k=int(record["k"]) if record["k"] else None,
                    p=int(record["p"]) if record["p"] else None,
                    protocol=record["protocol"],
                    agent=record["agent"],
                    trials=int(record["trials"]),
                    successes=int(record["successes"]),
                    success_rate=float(record["success_rate"]),
                    mean_total_tokens=float(record["mean_total_tokens"]),
                    std_total_tokens=float(record["std_total_tokens"]),
                    mean_tokens_per_request=float(record["mean_tokens_per_request"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"{path}, data row {index}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path}: no data rows to plot")
    return rows


def select_puzzle(rows: list[FigureRow], puzzle: str, source: Path) -> list[FigureRow]:
    selected = [row for row in rows if row.puzzle == puzzle]
    if not selected:
        raise SchemaError(f"{source}: no {puzzle} rows to plot")
    return selected
