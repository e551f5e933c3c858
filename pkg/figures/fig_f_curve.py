#!/usr/bin/env python3
"""Cooperativity curve f(alpha) on a log acceleration axis, from a sweep CSV."""

import argparse
import sys

import matplotlib.pyplot as plt

from figlib import SWEEP_COLUMNS, floats, load_csv, run_script


def render(argv=None) -> dict:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="inputs", required=True, help="sweep CSV")
    parser.add_argument("--out", required=True, help="output PNG")
    parser.add_argument("--title", default="f vs acceleration")
    args = parser.parse_args(argv)

    table = load_csv(args.inputs, SWEEP_COLUMNS)
    alpha = floats(table, "alpha")
    f = floats(table, "f")

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogx(alpha, f, "-", color="tab:blue")
    ax.set_xlabel(r"$\alpha$ (m/s$^2$)")
    ax.set_ylabel(r"$f(\alpha)$")
    ax.set_title(args.title)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return {"points": len(alpha), "f_max": max(f), "f_min": min(f)}


if __name__ == "__main__":
    sys.exit(run_script(render))
