#!/usr/bin/env python3
"""Plot a scatter CSV written by `durfee cohort --scatter`.

    durfee cohort data/nas.csv --nonbook --scatter nas.csv
    python3 tools/plot_scatter.py nas.csv -o nas.png

Draws rule-of-thumb estimate (x) against actual h (y), one panel per
series (raw, and nonbook when present), with the line y = x.
"""
import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("scatter_csv")
    ap.add_argument("-o", "--output", default="scatter.png")
    args = ap.parse_args()

    series = {}
    with open(args.scatter_csv, newline="") as f:
        for row in csv.DictReader(f):
            xs, ys = series.setdefault(row["series"], ([], []))
            xs.append(float(row["estimate"]))
            ys.append(float(row["h"]))

    fig, axes = plt.subplots(1, len(series), figsize=(6 * len(series), 5), squeeze=False)
    for ax, (name, (xs, ys)) in zip(axes[0], series.items()):
        ax.scatter(xs, ys, s=12)
        top = max(xs + ys) * 1.05
        ax.plot([0, top], [0, top], linewidth=0.8, color="gray")
        ax.set_xlabel("rule of thumb")
        ax.set_ylabel("actual h")
        ax.set_title("books removed" if name == "nonbook" else "all citations")
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
