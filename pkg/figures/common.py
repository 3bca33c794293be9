"""Shared loading and styling for the figure scripts.

Line-style convention across all figures: solid for STA engines, dashed
for NA, dotted for QL.  Noise levels map to a color family.  All figures
are pure functions of the CSV content plus the style flags.
"""
from __future__ import annotations

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

MODE_STYLES = {"STA": "-", "NA": "--", "QL": ":"}
LAMBDA_COLORS = ("#e08214", "#8073ac", "#7f3b08", "#2d004b", "#35978f")


class ColumnError(RuntimeError):
    """A required CSV column is absent."""


def load_rows(path, required):
    """Read a CLI result CSV, check columns, parse numeric fields."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [col for col in required if col not in header]
        if missing:
            raise ColumnError(f"missing column(s): {', '.join(missing)}")
        rows = []
        for raw in reader:
            row = dict(raw)
            for key, value in raw.items():
                if key in ("mode", "status", "regime", "tur_satisfied"):
                    continue
                row[key] = float(value) if value not in ("", None) else None
            rows.append(row)
    return rows


def ok_rows(rows):
    return [r for r in rows if r.get("status", "ok") == "ok"]


def group_key(row, keys):
    return tuple(row[k] for k in keys)


def groups(rows, keys):
    """Rows grouped by the given keys, each group sorted by tau."""
    seen = {}
    for row in rows:
        seen.setdefault(group_key(row, keys), []).append(row)
    for key in sorted(seen, key=str):
        yield key, sorted(seen[key], key=lambda r: r["tau"])


def lambda_color(lam, lambdas):
    return LAMBDA_COLORS[sorted(lambdas).index(lam) % len(LAMBDA_COLORS)]


def series(rows_group, column):
    pts = [(r["tau"], r[column]) for r in rows_group if r[column] is not None]
    taus = [p[0] for p in pts]
    values = [p[1] for p in pts]
    return taus, values


def annotate_empty(ax, message):
    ax.text(0.5, 0.5, message, transform=ax.transAxes, ha="center",
            va="center", fontsize=11, color="0.4")


def apply_tau_axis(axes, log_tau):
    for ax in axes:
        if log_tau:
            ax.set_xscale("log")
        ax.set_xlabel(r"cycle time $\tau$  [$1/\Omega_x$]")


def run_script(build, required, description):
    """Argument handling shared by every figure script."""
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("csv", help="input CSV produced by the ottoforge CLI")
    parser.add_argument("out", help="output image path")
    parser.add_argument("--linear-tau", action="store_true",
                        help="linear instead of logarithmic tau axis")
    args = parser.parse_args()
    try:
        rows = load_rows(args.csv, required)
    except (OSError, ColumnError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fig = build(rows, log_tau=not args.linear_tau)
    fig.savefig(args.out, dpi=160)
    plt.close(fig)
    return 0
