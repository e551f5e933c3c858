#!/usr/bin/env python3
"""First-order derivative of a steady observable with respect to acceleration,
from a sweep CSV; the peak marks the localized-to-thermal transition."""

import argparse
import sys

import matplotlib.pyplot as plt

from figlib import SWEEP_COLUMNS, SchemaError, floats, load_csv, run_script

OBSERVABLES = ("Mz", "Mzz", "Mc")


def central_differences(alpha, values):
    mid, deriv = [], []
    for i in range(1, len(alpha) - 1):
        mid.append(alpha[i])
        deriv.append((values[i + 1] - values[i - 1]) / (alpha[i + 1] - alpha[i - 1]))
    return mid, deriv


def render(argv=None) -> dict:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="inputs", required=True, help="sweep CSV")
    parser.add_argument("--out", required=True, help="output PNG")
    parser.add_argument("--title", default=None)
    parser.add_argument("--observable", choices=OBSERVABLES, default="Mc")
    args = parser.parse_args(argv)

    table = load_csv(args.inputs, SWEEP_COLUMNS)
    alpha = floats(table, "alpha")
    values = floats(table, args.observable)
    if len(alpha) < 3:
        raise SchemaError(f"{args.inputs}: need at least 3 rows for derivatives")
    mid, deriv = central_differences(alpha, values)

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogx(mid, deriv, "-", color="tab:purple")
    ax.set_xlabel(r"$\alpha$ (m/s$^2$)")
    ax.set_ylabel(rf"$dM/d\alpha$ ({args.observable})")
    ax.set_title(args.title or rf"derivative of {args.observable} vs $\alpha$")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    peak = max(range(len(deriv)), key=lambda i: abs(deriv[i]))
    return {"peak_alpha": mid[peak], "peak_value": abs(deriv[peak])}


if __name__ == "__main__":
    sys.exit(run_script(render))
