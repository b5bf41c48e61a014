"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py          # all eight
    python3 scripts/run_acceptance.py 2 7      # a subset
"""
import sys

from pbwdeform.acceptance import run_all

if __name__ == "__main__":
    results = run_all([int(a) for a in sys.argv[1:]] or None)
    sys.exit(0 if all(r.passed for r in results) else 1)
