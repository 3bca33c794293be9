#!/usr/bin/env python3
"""Power (top) and efficiency (bottom) of quantum-lubricated engines, QL
dephasing strength encoded by color saturation (blue without control
noise, red with), against the dashed NA baselines."""
import sys

import matplotlib.pyplot as plt

from common import (MODE_STYLES, apply_tau_axis, groups, ok_rows, run_script,
                    series)

REQUIRED = ("mode", "tau", "lambda", "lambda_ql", "power", "efficiency",
            "status")


def _ql_color(lam, lam_ql, ql_values):
    family = plt.get_cmap("Reds" if lam > 0 else "Blues")
    rank = sorted(ql_values).index(lam_ql)
    return family(0.35 + 0.6 * rank / max(1, len(ql_values) - 1))


def build(rows, log_tau=True):
    rows = ok_rows(rows)
    ql_values = sorted({r["lambda_ql"] for r in rows if r["mode"] == "QL"})
    fig, (ax_p, ax_e) = plt.subplots(2, 1, figsize=(6.0, 7.0), sharex=True)
    for (mode, lam, lam_ql), grp in groups(rows, ("mode", "lambda", "lambda_ql")):
        if mode == "QL":
            style = dict(
                linestyle="-",
                color=_ql_color(lam, lam_ql, ql_values),
                label=rf"QL $\lambda_{{QL}}$={lam_ql:g}, $\lambda$={lam:g}",
            )
        else:
            style = dict(
                linestyle=MODE_STYLES.get(mode, "--"),
                color="0.25" if lam == 0 else "0.55",
                label=rf"{mode}, $\lambda$={lam:g}",
            )
        ax_p.plot(*series(grp, "power"), **style)
        ax_e.plot(*series(grp, "efficiency"), **style)
    ax_p.axhline(0.0, color="0.85", lw=0.8, zorder=0)
    ax_p.set_ylabel(r"power  [$\Omega_x^2$]")
    ax_e.set_ylabel(r"efficiency $\eta$")
    ax_p.legend(fontsize=6, ncol=2)
    apply_tau_axis((ax_e,), log_tau)
    fig.tight_layout()
    return fig


if __name__ == "__main__":
    sys.exit(run_script(build, REQUIRED, __doc__))
