"""Shared CSV loading and schema checks for the figure scripts.

The scripts consume only the CLI's documented CSV files; there is no
in-process coupling to the simulation package.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

SWEEP_COLUMNS = [
    "alpha", "f", "phase", "Mz", "Mzz", "Mc", "concurrence", "gap", "degeneracy",
]
SPECTRUM_COLUMNS = ["p", "re", "im"]


class SchemaError(Exception):
    pass


def load_csv(path: str, required_columns: list) -> dict:
    """Read a CSV into column lists, enforcing the documented header."""
    rows = list(csv.reader(Path(path).read_text().strip().splitlines()))
    if not rows:
        raise SchemaError(f"{path}: empty CSV, expected columns {required_columns}")
    header = rows[0]
    for col in required_columns:
        if col not in header:
            raise SchemaError(f"{path}: missing column {col!r}")
    if len(rows) < 2:
        raise SchemaError(f"{path}: no data rows")
    table = {col: [] for col in header}
    for row in rows[1:]:
        for col, value in zip(header, row):
            table[col].append(value)
    return table


def floats(table: dict, column: str) -> list:
    return [float(v) for v in table[column]]


def run_script(render, argv=None) -> int:
    """Standard entry wrapper: schema errors exit 1 with a message."""
    try:
        render(argv)
        return 0
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
