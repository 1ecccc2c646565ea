#!/usr/bin/env python3
"""Full default pipeline: meshes, bound sweep, and the witness report.

Runs the three stages on the pinned family (cuffs (2,2,2), n=2, refinement 2,
N = 1,2,4,8,16) so the eigenvalue collapse crosses bound < 0.1.  Everything
lands in one output directory; rerunning reproduces identical tables.
"""

import argparse
import sys

from hypspectra.cli import main

FAMILY = ["--refine", "2", "--n", "2", "--N", "1,2,4,8,16"]


def run(out: str) -> int:
    for command in ("build", "sweep", "corollary"):
        print(f"== {command} ==")
        rc = main([command, "--out", out] + FAMILY)
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="runs/default", help="output directory")
    args = parser.parse_args()
    sys.exit(run(args.out))
