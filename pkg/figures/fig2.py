#!/usr/bin/env python3
"""Average power (top) and efficiency (bottom) against cycle time for NA
(dashed) and STA (solid) engines at each noise level in the sweep CSV."""
import sys

import matplotlib.pyplot as plt

from common import (MODE_STYLES, apply_tau_axis, groups, lambda_color,
                    ok_rows, run_script, series)

REQUIRED = ("mode", "tau", "lambda", "power", "efficiency", "status")


def build(rows, log_tau=True):
    rows = ok_rows(rows)
    lambdas = sorted({r["lambda"] for r in rows})
    fig, (ax_p, ax_e) = plt.subplots(2, 1, figsize=(6.0, 7.0), sharex=True)
    for (mode, lam), grp in groups(rows, ("mode", "lambda")):
        style = dict(
            linestyle=MODE_STYLES.get(mode, "-"),
            color=lambda_color(lam, lambdas),
            label=rf"{mode}, $\lambda$ = {lam:g}",
        )
        ax_p.plot(*series(grp, "power"), **style)
        ax_e.plot(*series(grp, "efficiency"), **style)
    ax_p.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    ax_p.set_ylabel(r"power  [$\Omega_x^2$]")
    ax_e.set_ylabel(r"efficiency $\eta$")
    ax_p.legend(fontsize=8, ncol=2)
    apply_tau_axis((ax_e,), log_tau)
    fig.tight_layout()
    return fig


if __name__ == "__main__":
    sys.exit(run_script(build, REQUIRED, __doc__))
