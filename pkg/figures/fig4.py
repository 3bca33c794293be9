#!/usr/bin/env python3
"""Mean power from the four-point measurement scheme against cycle time:
solid STA, dotted QL, dashed NA, colors by noise level."""
import sys

import matplotlib.pyplot as plt

from common import (MODE_STYLES, apply_tau_axis, groups, lambda_color,
                    ok_rows, run_script, series)

REQUIRED = ("mode", "tau", "lambda", "mean_power_4pms", "status")


def build(rows, log_tau=True):
    rows = ok_rows(rows)
    lambdas = sorted({r["lambda"] for r in rows})
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for (mode, lam), grp in groups(rows, ("mode", "lambda")):
        ax.plot(
            *series(grp, "mean_power_4pms"),
            linestyle=MODE_STYLES.get(mode, "-"),
            color=lambda_color(lam, lambdas),
            label=rf"{mode}, $\lambda$ = {lam:g}",
        )
    ax.axhline(0.0, color="0.85", lw=0.8, zorder=0)
    ax.set_ylabel(r"measured power  [$\Omega_x^2$]")
    ax.legend(fontsize=8, ncol=2)
    apply_tau_axis((ax,), log_tau)
    fig.tight_layout()
    return fig


if __name__ == "__main__":
    sys.exit(run_script(build, REQUIRED, __doc__))
