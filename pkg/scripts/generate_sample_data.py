#!/usr/bin/env python3
"""Regenerate the sample CSVs shipped with the figure scripts.

Runs the CLI on the example configurations and writes the results into
figures/sample_data/.  Pass --threads to parallelize the grids.
"""
import argparse
import pathlib
import sys

from ottoforge.cli import main as ottoforge_main

ROOT = pathlib.Path(__file__).resolve().parent.parent
OUT = ROOT / "figures" / "sample_data"

JOBS = (
    ("sweep", "fig2.toml", "sweep_fig2.csv"),
    ("sweep", "fig3.toml", "sweep_fig3.csv"),
    ("fpms", "fpms.toml", "fpms_fig456.csv"),
)


def run(threads):
    OUT.mkdir(parents=True, exist_ok=True)
    for command, config, out_name in JOBS:
        args = [
            command,
            "--config", str(ROOT / "configs" / config),
            "--out", str(OUT / out_name),
        ]
        if threads:
            args += ["--threads", str(threads)]
        print("ottoforge", " ".join(args))
        code = ottoforge_main(args)
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--threads", type=int, default=None)
    sys.exit(run(parser.parse_args().threads))
