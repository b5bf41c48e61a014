"""Exhaustive small-coefficient sweep over NC_A1(2) deformations, grouped by verdict."""
import argparse
import collections

from pbwdeform.acceptance import F5, nilcox_sweep
from pbwdeform.core import QQ


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--f5", action="store_true", help="work over F_5 instead of Q")
    ap.add_argument("--show-pbw", action="store_true", help="list every PBW combination")
    args = ap.parse_args()
    rows = nilcox_sweep(F5 if args.f5 else QQ)
    tally = collections.Counter()
    for module, dim_v, ent, pbw, predicted, agrees in rows:
        tally[(module, dim_v, pbw)] += 1
        if args.show_pbw and pbw:
            print(f"{module:7s} dimV={dim_v} {ent}")
        if pbw != predicted or not agrees:
            print(f"MISMATCH {module} dimV={dim_v} {ent}: pbw={pbw} predicted={predicted}")
    for (module, dim_v, pbw), n in sorted(tally.items()):
        print(f"{module:7s} dimV={dim_v} {'PBW' if pbw else 'not PBW':8s} {n}")


if __name__ == "__main__":
    main()
