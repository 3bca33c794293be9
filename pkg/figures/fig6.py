#!/usr/bin/env python3
"""Power and heat Fano factors against cycle time, one panel per noise
level (noiseless on top when present): F(P) in color, F(Q_H) in gray,
solid STA, dotted QL, dashed NA."""
import sys

import matplotlib.pyplot as plt

from common import (MODE_STYLES, annotate_empty, apply_tau_axis, groups,
                    ok_rows, run_script, series)

REQUIRED = ("mode", "tau", "lambda", "fano_power", "fano_qh", "status")

MODE_COLORS = {"NA": "#e08214", "STA": "#1b7837", "QL": "#542788"}


def build(rows, log_tau=True):
    rows = ok_rows(rows)
    lambdas = sorted({r["lambda"] for r in rows})
    n_panel = max(1, len(lambdas))
    fig, axes = plt.subplots(
        n_panel, 1, figsize=(6.0, 3.2 * n_panel), sharex=True, squeeze=False)
    axes = axes[:, 0]
    if not rows:
        annotate_empty(axes[0], "no rows in input")
    for ax, lam in zip(axes, lambdas):
        subset = [r for r in rows if r["lambda"] == lam]
        for (mode,), grp in groups(subset, ("mode",)):
            style = MODE_STYLES.get(mode, "-")
            ax.plot(*series(grp, "fano_power"), linestyle=style,
                    color=MODE_COLORS.get(mode, "k"),
                    label=f"F(P) {mode}")
            ax.plot(*series(grp, "fano_qh"), linestyle=style, color="0.6",
                    label=f"F(Q_H) {mode}")
        ax.set_yscale("log")
        ax.set_ylabel(rf"Fano factor ($\lambda$ = {lam:g})")
        ax.legend(fontsize=7, ncol=3)
    apply_tau_axis(axes[-1:], log_tau)
    fig.tight_layout()
    return fig


if __name__ == "__main__":
    sys.exit(run_script(build, REQUIRED, __doc__))
