#!/usr/bin/env python3
"""Relative power fluctuations at engine-regime points against the TUR
bound: curves show the measured Delta_P^2 / P^2 (tur_lhs), light gray
lines the bound 2 / Sigma_dot straight from the CSV's tur_rhs column."""
import sys

import matplotlib.pyplot as plt

from common import (MODE_STYLES, annotate_empty, apply_tau_axis, groups,
                    lambda_color, ok_rows, run_script, series)

REQUIRED = ("mode", "tau", "lambda", "tur_lhs", "tur_rhs", "regime", "status")

BOUND_LABEL = r"TUR bound $2/\dot{\Sigma}$"


def build(rows, log_tau=True):
    rows = [r for r in ok_rows(rows)
            if r["regime"] == "engine" and r["tur_lhs"] is not None]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    if not rows:
        annotate_empty(ax, "no engine-regime points in input")
        apply_tau_axis((ax,), log_tau)
        fig.tight_layout()
        return fig
    lambdas = sorted({r["lambda"] for r in rows})
    bound_labelled = False
    for (mode, lam), grp in groups(rows, ("mode", "lambda")):
        ax.plot(
            *series(grp, "tur_lhs"),
            linestyle=MODE_STYLES.get(mode, "-"),
            color=lambda_color(lam, lambdas),
            label=rf"{mode}, $\lambda$ = {lam:g}",
        )
        ax.plot(
            *series(grp, "tur_rhs"),
            linestyle=MODE_STYLES.get(mode, "-"),
            color="0.7", lw=1.0, zorder=0,
            label=None if bound_labelled else BOUND_LABEL,
        )
        bound_labelled = True
    ax.set_yscale("log")
    ax.set_ylabel(r"$\Delta_P^2 / P_\tau^2$")
    ax.legend(fontsize=8, ncol=2)
    apply_tau_axis((ax,), log_tau)
    fig.tight_layout()
    return fig


if __name__ == "__main__":
    sys.exit(run_script(build, REQUIRED, __doc__))
