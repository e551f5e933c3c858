#!/usr/bin/env python3
"""Eigenvalue ladder of the generator, overlaying spectrum CSVs for
different cooperativity values with distinct markers."""

import argparse
import sys
from pathlib import Path

import matplotlib.pyplot as plt

from figlib import SPECTRUM_COLUMNS, floats, load_csv, run_script

MARKERS = [("+", "tab:red"), ("+", "tab:blue"), ("x", "tab:green")]
ZERO_TOL = 1e-10


def render(argv=None) -> dict:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="inputs", required=True, nargs="+",
                        help="one or more spectrum CSVs (p,re,im)")
    parser.add_argument("--out", required=True, help="output PNG")
    parser.add_argument("--title", default="generator eigenvalue ladder")
    parser.add_argument("--labels", nargs="*", default=None,
                        help="legend label per input (default: file stem)")
    args = parser.parse_args(argv)

    labels = args.labels or [Path(p).stem for p in args.inputs]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    zero_counts = {}
    for i, path in enumerate(args.inputs):
        table = load_csv(path, SPECTRUM_COLUMNS)
        p = floats(table, "p")
        re = floats(table, "re")
        n_zero = sum(1 for v in re if abs(v) < ZERO_TOL)
        marker, color = MARKERS[i % len(MARKERS)]
        label = f"{labels[i]} ({n_zero} zero mode{'s' if n_zero != 1 else ''})"
        ax.plot(p, re, marker, color=color, markersize=9, linestyle="none",
                label=label)
        zero_counts[labels[i]] = n_zero
    ax.set_xlabel("eigenvalue index $p$ (increasing order)")
    ax.set_ylabel(r"$\mathrm{Re}\,\lambda_p$")
    ax.set_title(args.title)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return {"zero_counts": zero_counts}


if __name__ == "__main__":
    sys.exit(run_script(render))
