#!/usr/bin/env python3
"""Refinement study of the base surface's low spectrum.

Solves the five smallest eigenvalues at refinement levels 0..3 and prints
successive-difference ratios; piecewise-linear elements halve the mesh size
per level, so the ratios should sit near 4.
"""

import argparse
import sys

from hypspectra.cli import main

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="runs/converge", help="output directory")
    parser.add_argument("--levels", type=int, default=3,
                        help="refinement steps (>= 2)")
    args = parser.parse_args()
    sys.exit(main(["converge", "--out", args.out, "--refine", str(args.levels)]))
