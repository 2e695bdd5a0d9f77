"""Run every bundled configuration through the command line interface.

Prints the group summary, the basic degrees, the existence report and
(where a window is configured) the bifurcation report for each config in
configs/.  Output is deterministic, so diffing two runs of this script
is a quick regression check of the whole pipeline.
"""

import pathlib
import sys

from eqdeg.cli import main

CONFIGS = pathlib.Path(__file__).resolve().parent.parent / "configs"

RUNS = [
    ("group-info", "m3_d3.json"),
    ("basic-degrees", "m6_trivial.json"),
    ("existence", "m3_d3.json"),
    ("existence", "m4_d3.json"),
    ("existence", "m6_trivial.json"),
    ("bifurcation", "m3_bifurcation.json"),
]


def run() -> int:
    worst = 0
    for verb, name in RUNS:
        header = f"{verb} {name}"
        print("=" * len(header))
        print(header)
        print("=" * len(header))
        code = main([verb, str(CONFIGS / name)])
        worst = max(worst, code)
        print()
    return worst


if __name__ == "__main__":
    sys.exit(run())
