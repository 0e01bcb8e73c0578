"""The two chart renderers.

Both read an aggregates CSV, draw with matplotlib on the Agg backend, save
to the requested path, and return the Figure so callers (and tests) can
inspect the plotted data.  Plotted values are taken verbatim from the CSV;
no smoothing, no rescaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.figure import Figure

from .schema import FigureRow, SchemaError, read_rows, select_puzzle

HANOI_KIND = "hanoi_dual_axis"
RIVER_KIND = "river_grid"
KINDS = (HANOI_KIND, RIVER_KIND)

SUCCESS_BAR_COLOR = "#8c6bb1"  # purple
FAILURE_BAR_COLOR = "#de2d26"  # red
SUCCESS_GRID_COLOR = "#2ca25f"  # green
TOKEN_LINE_COLOR = "#252525"  # near-black
PER_REQUEST_COLOR = "#3182bd"  # blue


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str | Path
    kind: str
    out_path: str | Path
    dpi: int = 150
    inset: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}; choose from {KINDS}")
        if self.dpi < 1:
            raise SchemaError(f"dpi must be >= 1, got {self.dpi}")


def _finish(fig: Figure, spec: FigureSpec) -> Figure:
    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=spec.dpi)
    plt.close(fig)
    return fig


def _x_labels(rows: list[FigureRow]) -> list[str]:
    many_p = len({row.p for row in rows}) > 1
    labels = []
    for row in rows:
        label = f"N={row.n}"
        if many_p and row.p is not None:
            label += f"\np={row.p}"
        labels.append(label)
    return labels


def render_hanoi_figure(spec: FigureSpec) -> Figure:
    """Dual-axis chart: success bars left, token lines right, optional inset."""
    rows = select_puzzle(read_rows(spec.csv_path), "hanoi", Path(spec.csv_path))
    rows = sorted(rows, key=lambda row: (row.n, row.p if row.p is not None else -1))
    positions = range(len(rows))
    rates = [row.success_rate for row in rows]
    totals = [row.mean_total_tokens for row in rows]
    stds = [row.std_total_tokens for row in rows]
    per_request = [row.mean_tokens_per_request for row in rows]

    fig, ax_rate = plt.subplots(figsize=(8.0, 4.5))
    ax_rate.set_gid("success_axis")
    ax_rate.bar(
        positions, rates, width=0.6, color=SUCCESS_BAR_COLOR, label="success rate"
    )
    ax_rate.set_ylim(0.0, 1.05)
    ax_rate.set_ylabel("Success rate")
    ax_rate.set_xlabel("Configuration")
    ax_rate.set_xticks(list(positions), _x_labels(rows))
    ax_rate.set_title("Towers of Hanoi")

    ax_tokens = ax_rate.twinx()
    ax_tokens.set_gid("token_axis")
    ax_tokens.plot(
        positions,
        totals,
        color=TOKEN_LINE_COLOR,
        marker="o",
        label="mean total tokens",
    )
    ax_tokens.fill_between(
        positions,
        [total - std for total, std in zip(totals, stds)],
        [total + std for total, std in zip(totals, stds)],
        color=TOKEN_LINE_COLOR,
        alpha=0.15,
        linewidth=0,
    )
    ax_tokens.plot(
        positions,
        per_request,
        color=PER_REQUEST_COLOR,
        linestyle="--",
        marker="s",
        label="mean tokens per request",
    )
    ax_tokens.set_ylabel("Tokens")
    ax_tokens.legend(loc="upper left", fontsize=8)

    if spec.inset:
        # The dashed line is dwarfed by the totals; the inset rescales it.
        ax_inset = ax_tokens.inset_axes((0.62, 0.58, 0.34, 0.32))
        ax_inset.set_gid("inset_axis")
        ax_inset.plot(
            positions,
            per_request,
            color=PER_REQUEST_COLOR,
            linestyle="--",
            marker="s",
            label="mean tokens per request",
        )
        ax_inset.set_title("tokens per request", fontsize=8)
        ax_inset.tick_params(labelsize=7)
    return _finish(fig, spec)


def render_river_figure(spec: FigureSpec) -> Figure:
    """Grouped success/failure bars with a token line and error bars."""
    rows = select_puzzle(read_rows(spec.csv_path), "river", Path(spec.csv_path))
    rows = sorted(rows, key=lambda row: (row.k if row.k is not None else -1, row.n))
    positions = range(len(rows))
    rates = [row.success_rate for row in rows]
    failures = [1.0 - row.success_rate for row in rows]
    totals = [row.mean_total_tokens for row in rows]
    stds = [row.std_total_tokens for row in rows]

    fig, ax_rate = plt.subplots(figsize=(8.0, 4.5))
    ax_rate.set_gid("success_axis")
    ax_rate.bar(
        [x - 0.2 for x in positions],
        rates,
        width=0.4,
        color=SUCCESS_GRID_COLOR,
        label="success",
    )
    ax_rate.bar(
        [x + 0.2 for x in positions],
        failures,
        width=0.4,
        color=FAILURE_BAR_COLOR,
        label="failure",
    )
    ax_rate.set_ylim(0.0, 1.05)
    ax_rate.set_ylabel("Rate")
    ax_rate.set_xlabel("Configuration")
    ax_rate.set_xticks(
        list(positions), [f"N={row.n}, k={row.k}" for row in rows]
    )
    ax_rate.set_title("River Crossing")
    ax_rate.legend(loc="upper left", fontsize=8)

    ax_tokens = ax_rate.twinx()
    ax_tokens.set_gid("token_axis")
    ax_tokens.errorbar(
        list(positions),
        totals,
        yerr=stds,
        color=TOKEN_LINE_COLOR,
        marker="o",
        capsize=3,
        label="mean total tokens",
    )
    ax_tokens.set_ylabel("Tokens")
    ax_tokens.legend(loc="upper right", fontsize=8)
    return _finish(fig, spec)


_RENDERERS = {
    HANOI_KIND: render_hanoi_figure,
    RIVER_KIND: render_river_figure,
}


def render_figure(spec: FigureSpec) -> Figure:
    return _RENDERERS[spec.kind](spec)
