#!/usr/bin/env python3
"""Sweep the worked qubit family: closed form vs roof solver vs the
state-transformation value, as CSV on stdout.

Usage: example1_sweep.py [--mu 0.5 -0.25 ...] [--x-steps 21]
"""

import sys

from superposition.cli import main

if __name__ == "__main__":
    sys.exit(main(["example1"] + sys.argv[1:]))
