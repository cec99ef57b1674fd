#!/usr/bin/env python3
"""Plot a CSV produced by the udw command-line tool.

The first column is taken as the x axis. Every further numeric column is
drawn as its own line; a log y axis is used when the values span more than
three decades. Without matplotlib the script prints a column summary
instead, so it stays usable in a bare environment.

Usage: plot_results.py results.csv [-o plot.png]
"""

import argparse
import csv
import sys


def read_table(path):
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if len(rows) < 2:
        sys.exit(f"{path}: need a header and at least one data row")
    header = rows[0]
    numeric = []
    for name_index, name in enumerate(header):
        try:
            column = [float(row[name_index]) for row in rows[1:]]
        except ValueError:
            continue  # tag columns such as the g2 regime
        numeric.append((name, column))
    if len(numeric) < 2:
        sys.exit(f"{path}: fewer than two numeric columns")
    return numeric


def summarize(columns):
    x_name, x = columns[0]
    print(f"{len(x)} rows, x = {x_name} in [{min(x):g}, {max(x):g}]")
    for name, values in columns[1:]:
        print(f"  {name}: min {min(values):.6g}  max {max(values):.6g}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv_file")
    parser.add_argument("-o", "--output", help="write the figure here instead of showing it")
    parser.add_argument("--columns", nargs="*", help="plot only these named columns")
    args = parser.parse_args()

    columns = read_table(args.csv_file)
    if args.columns:
        keep = set(args.columns)
        columns = [columns[0]] + [c for c in columns[1:] if c[0] in keep]
        if len(columns) < 2:
            sys.exit("no requested column found in the file")

    try:
        import matplotlib
        if args.output:
            matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available; summary only", file=sys.stderr)
        summarize(columns)
        return

    x_name, x = columns[0]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    spans_decades = False
    for name, values in columns[1:]:
        ax.plot(x, values, marker=".", label=name)
        positive = [v for v in values if v > 0]
        if positive and max(positive) / min(positive) > 1e3:
            spans_decades = True
    if spans_decades and all(v > 0 for _, vals in columns[1:] for v in vals):
        ax.set_yscale("log")
    ax.set_xlabel(x_name)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    if args.output:
        fig.savefig(args.output, dpi=150)
        print(f"wrote {args.output}")
    else:
        plt.show()


if __name__ == "__main__":
    main()
