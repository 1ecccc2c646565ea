#!/usr/bin/env python3
"""Cross-validate the sparse eigensolver against the dense route.

Repeats the oracle battery under several solver seeds; the random-pencil
draws and starting vectors change each time, the verdict must not.
"""

import argparse
import sys

from hypspectra.cli import main

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="runs/oracle", help="output directory")
    parser.add_argument("--seeds", default="0,1,2", help="comma-separated seeds")
    args = parser.parse_args()
    worst = 0
    for seed in args.seeds.split(","):
        print(f"== seed {seed.strip()} ==")
        rc = main(["oracle-check", "--out", f"{args.out}/seed{seed.strip()}",
                   "--seed", seed.strip()])
        worst = max(worst, rc)
    sys.exit(worst)
