"""Chart rendering for puzzlebench aggregate CSV files."""

from .render import (
    FigureSpec,
    HANOI_KIND,
    KINDS,
    RIVER_KIND,
    render_figure,
    render_hanoi_figure,
    render_river_figure,
)
from .schema import REQUIRED_COLUMNS, FigureRow, SchemaError, read_rows

__all__ = [
    "FigureRow",
    "FigureSpec",
    "HANOI_KIND",
    "KINDS",
    "REQUIRED_COLUMNS",
    "RIVER_KIND",
    "SchemaError",
    "read_rows",
    "render_figure",
    "render_hanoi_figure",
    "render_river_figure",
]

__version__ = "0.1.0"
