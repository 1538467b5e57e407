#!/usr/bin/env python3
"""
infodist launcher.

Forwards its arguments to the command line, so `python start.py randsuite`
behaves like `python -m infodist randsuite`. With no arguments it runs the
full certification suite.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from infodist.cli.main import run

if __name__ == "__main__":
    argv = sys.argv[1:] or ["randsuite"]
    print(f"infodist {' '.join(argv)}", file=sys.stderr)
    sys.exit(run(argv))
